"""Kernel backend selection.

Imports the compiled extension when it is available and not disabled via
HYPERSPACE_KERNELS=py, otherwise the numpy fallback.  Both backends expose
the same four functions with identical semantics.
"""

from __future__ import annotations

import os

if os.environ.get("HYPERSPACE_KERNELS", "").lower() in ("py", "python", "numpy"):
    from . import _kernels_py as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "numpy"

maxmin_points = _impl.maxmin_points
min_dists = _impl.min_dists
sup_dist_box = _impl.sup_dist_box
sup_dist_segment = _impl.sup_dist_segment
