"""Compact subsets of R^n under the Hausdorff metric, with verified paths."""

from .geometry import (
    AxisBox,
    CompactSet,
    DimensionMismatch,
    DocumentError,
    FiniteSet,
    GeometryError,
    Segment,
    UnionSet,
    bounding_box,
    box_boundary,
    canonical_box,
    contains_point,
    dumps_set,
    loads_set,
    set_from_document,
    set_to_document,
    translate,
)
from .kernels import BACKEND
from .metric import (
    DistanceResult,
    PointBudgetError,
    brute_force_hausdorff,
    directed_distance,
    hausdorff,
    nested_box_hausdorff,
    point_to_set,
)
from .paths import (
    HyperPath,
    JunctionMismatch,
    PathError,
    concat,
    connect,
    contraction_gap,
    path_from_document,
    point_to_box_path,
    reverse,
    set_to_box_path,
    translation_path,
)
from .verify import (
    SetGenerator,
    SuiteReport,
    run_contraction,
    run_metric_axioms,
    run_oracle_equivalence,
    run_path_modulus,
)

__version__ = "0.1.0"

__all__ = [
    "AxisBox", "BACKEND", "CompactSet", "DimensionMismatch", "DistanceResult",
    "DocumentError", "FiniteSet", "GeometryError", "HyperPath",
    "JunctionMismatch", "PathError", "PointBudgetError", "Segment",
    "SetGenerator", "SuiteReport", "UnionSet", "bounding_box", "box_boundary",
    "brute_force_hausdorff", "canonical_box", "concat", "connect",
    "contains_point", "contraction_gap", "directed_distance", "dumps_set",
    "hausdorff", "loads_set", "nested_box_hausdorff", "path_from_document",
    "point_to_box_path", "point_to_set", "reverse", "run_contraction",
    "run_metric_axioms", "run_oracle_equivalence", "run_path_modulus",
    "set_from_document", "set_to_box_path", "set_to_document",
    "translate", "translation_path",
]
