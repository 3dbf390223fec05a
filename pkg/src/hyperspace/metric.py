"""The Hausdorff metric on representable compact sets.

Every distance comes back as a DistanceResult carrying a certified error
bound: the true value lies within err of value.  Closed forms (finite
sources, box against box) are exact with err 0; everything else runs a
certified subdivision that tightens the enclosure below the requested
tolerance.  A deliberately naive grid oracle (brute_force_hausdorff) is
kept around as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .geometry import (
    AxisBox,
    CompactSet,
    FiniteSet,
    GeometryError,
    Segment,
    UnionSet,
    as_point,
    check_dims,
)

DEFAULT_TOL = 1e-9
DEFAULT_POINT_BUDGET = 250_000
_MAX_CELLS = 4_000_000


class PointBudgetError(RuntimeError):
    """A grid sampling request exceeded the configured point budget."""


@dataclass(frozen=True)
class DistanceResult:
    """A distance value with a certified absolute error bound."""

    value: float
    err: float = 0.0

    def as_dict(self) -> dict:
        return {"value": self.value, "err": self.err}


@lru_cache(maxsize=2048)
def _pieces(B: CompactSet):
    """Flatten a set into arrays of convex pieces (boxes, segments, points)."""
    n = B.dim
    box_lo, box_hi, seg_p, seg_q, pts = [], [], [], [], []
    for prim in B.primitives():
        if isinstance(prim, FiniteSet):
            pts.extend(prim.points)
        elif isinstance(prim, AxisBox):
            box_lo.append(prim.lo)
            box_hi.append(prim.hi)
        elif isinstance(prim, Segment):
            seg_p.append(prim.p)
            seg_q.append(prim.q)
        else:
            raise GeometryError(f"unsupported primitive {type(prim).__name__}")

    def arr(rows):
        return np.array(rows, dtype=np.float64).reshape(len(rows), n)

    return arr(box_lo), arr(box_hi), arr(seg_p), arr(seg_q), arr(pts)


def _piece_count(pieces) -> int:
    box_lo, _, seg_p, _, pts = pieces
    return box_lo.shape[0] + seg_p.shape[0] + pts.shape[0]


def point_to_set(x, B: CompactSet) -> float:
    """Distance from the point x to the set B (exact closed form)."""
    x = as_point(x)
    check_dims(len(x), B.dim)
    row = np.array([x], dtype=np.float64)
    return float(kernels.min_dists(row, *_pieces(B))[0])


def directed_distance(A: CompactSet, B: CompactSet,
                      tol: float = DEFAULT_TOL) -> DistanceResult:
    """sup over a in A of the distance from a to B, with certified error.

    Exact (err 0) when A is finite, and whenever the subdivision resolves
    the supremum through a single convex piece of B; otherwise err <= tol.
    """
    check_dims(A.dim, B.dim)
    if isinstance(A, FiniteSet):
        rows = np.array(A.points, dtype=np.float64)
        return DistanceResult(float(kernels.min_dists(rows, *_pieces(B)).max()))
    if isinstance(A, UnionSet):
        results = [directed_distance(part, B, tol) for part in A.parts]
        lower = max(r.value - r.err for r in results)
        upper = max(r.value + r.err for r in results)
        return DistanceResult(0.5 * (lower + upper), 0.5 * (upper - lower))
    pieces = _pieces(B)
    if _piece_count(pieces) > 1 and not tol > 0.0:
        raise GeometryError(f"tol must be positive for subdivision, got {tol}")
    if isinstance(A, AxisBox):
        lo = np.array(A.lo, dtype=np.float64)
        hi = np.array(A.hi, dtype=np.float64)
        value, err = kernels.sup_dist_box(lo, hi, *pieces, tol, _MAX_CELLS)
    elif isinstance(A, Segment):
        p = np.array(A.p, dtype=np.float64)
        q = np.array(A.q, dtype=np.float64)
        value, err = kernels.sup_dist_segment(p, q, *pieces, tol, _MAX_CELLS)
    else:
        raise GeometryError(f"unsupported set {type(A).__name__}")
    return DistanceResult(float(value), float(err))


def hausdorff(A: CompactSet, B: CompactSet,
              tol: float = DEFAULT_TOL) -> DistanceResult:
    """Hausdorff distance: the larger of the two directed distances."""
    ab = directed_distance(A, B, tol)
    ba = directed_distance(B, A, tol)
    return DistanceResult(max(ab.value, ba.value), max(ab.err, ba.err))


def nested_box_hausdorff(A: AxisBox, C: AxisBox) -> float:
    """Hausdorff distance between boxes A inside C, in closed form.

    Per coordinate the farthest points of C from A sit max(A.lo-C.lo,
    C.hi-A.hi) away; the distance is the euclidean norm of those gaps.
    """
    if not isinstance(A, AxisBox) or not isinstance(C, AxisBox):
        raise GeometryError("nested_box_hausdorff expects two boxes")
    check_dims(A.dim, C.dim)
    if not C.contains_box(A):
        raise GeometryError(f"inner box {A} is not contained in {C}")
    gaps = (max(a - c, d - b)
            for a, b, c, d in zip(A.lo, A.hi, C.lo, C.hi))
    return math.sqrt(sum(g * g for g in gaps))


def sample_points(A: CompactSet, resolution: float,
                  max_points: int = DEFAULT_POINT_BUDGET) -> np.ndarray:
    """Sample A into a point cloud with covering radius <= resolution.

    Boxes become full grids with per-axis spacing resolution*min(1, 2/sqrt(n))
    so the grid covering radius stays below the resolution; segments are
    sampled along their arc length.  Raises PointBudgetError before
    materializing anything larger than max_points.
    """
    if not resolution > 0.0:
        raise GeometryError(f"resolution must be positive, got {resolution}")
    n = A.dim
    step = resolution * min(1.0, 2.0 / math.sqrt(n))
    plans = []
    total = 0
    for prim in A.primitives():
        if isinstance(prim, FiniteSet):
            count = len(prim.points)
        elif isinstance(prim, Segment):
            count = math.ceil(prim.length / resolution) + 1
        else:
            counts = [math.ceil(e / step) + 1 for e in prim.extents()]
            count = math.prod(counts)
        total += count
        if total > max_points:
            raise PointBudgetError(
                f"sampling at resolution {resolution} needs more than "
                f"{max_points} points")
        plans.append((prim, count))
    clouds = []
    for prim, count in plans:
        if isinstance(prim, FiniteSet):
            clouds.append(np.array(prim.points, dtype=np.float64))
        elif isinstance(prim, Segment):
            t = np.linspace(0.0, 1.0, count)[:, None]
            p = np.array(prim.p, dtype=np.float64)
            q = np.array(prim.q, dtype=np.float64)
            clouds.append(p[None, :] + t * (q - p)[None, :])
        else:
            axes = [np.linspace(a, b, math.ceil((b - a) / step) + 1)
                    for a, b in zip(prim.lo, prim.hi)]
            mesh = np.meshgrid(*axes, indexing="ij")
            clouds.append(np.stack([m.ravel() for m in mesh], axis=1))
    return np.ascontiguousarray(np.concatenate(clouds, axis=0))


def brute_force_directed(A: CompactSet, B: CompactSet, resolution: float,
                         max_points: int = DEFAULT_POINT_BUDGET) -> DistanceResult:
    """Directed distance by naive max-min over sampled point clouds."""
    check_dims(A.dim, B.dim)
    a = sample_points(A, resolution, max_points)
    b = sample_points(B, resolution, max_points)
    return DistanceResult(kernels.maxmin_points(a, b), resolution)


def brute_force_hausdorff(A: CompactSet, B: CompactSet, resolution: float,
                          max_points: int = DEFAULT_POINT_BUDGET) -> DistanceResult:
    """Hausdorff distance by naive max-min over sampled point clouds.

    Independent of the closed forms above: the only geometry it needs is
    the sampler.  The discretization of a 1-Lipschitz sup/inf moves the
    value by at most the covering radius, so err equals the resolution.
    """
    check_dims(A.dim, B.dim)
    a = sample_points(A, resolution, max_points)
    b = sample_points(B, resolution, max_points)
    value = max(kernels.maxmin_points(a, b), kernels.maxmin_points(b, a))
    return DistanceResult(value, resolution)
