"""Continuous paths in the space of compact sets.

A HyperPath is a map from [0, 1] into the compact sets together with a
certified Lipschitz constant for the Hausdorff metric: h(eval(t1),
eval(t2)) <= lipschitz * |t1 - t2| up to the evaluation error eval_err.
Three primitive constructions (translation, growing a point into a box,
deflating a whole set onto a box) plus reversal and concatenation are
enough to join any two sets, which is what connect() does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from . import metric
from .geometry import (
    AxisBox,
    CompactSet,
    DocumentError,
    FiniteSet,
    GeometryError,
    Segment,
    UnionSet,
    as_point,
    check_dims,
    set_from_node,
)

JUNCTION_TOL = 1e-9
DEFAULT_SEGMENT_SAMPLES = 33

KINDS = ("translation", "point_to_box", "set_to_box", "reversed",
         "concatenation")


class PathError(GeometryError):
    """A path constructor was given arguments outside its domain."""


class JunctionMismatch(PathError):
    """Consecutive legs of a concatenation do not meet."""


@dataclass(frozen=True)
class HyperPath:
    """A path of compact sets with recorded endpoints and modulus data.

    eval_err bounds the Hausdorff distance between eval(t) and the ideal
    deformation at t; it is zero unless a segment had to be sampled.
    """

    start: CompactSet
    end: CompactSet
    lipschitz: float
    kind: str
    eval_err: float = 0.0
    _fn: Callable = field(repr=False, compare=False, default=None)

    @property
    def dim(self) -> int:
        return self.start.dim

    def eval(self, t) -> CompactSet:
        t = float(t)
        if not 0.0 <= t <= 1.0:
            raise PathError(f"path parameter outside [0, 1]: {t}")
        return self._fn(t)


def _lerp_toward(a, target, t: float):
    return tuple(ai + t * (ti - ai) for ai, ti in zip(a, target))


def translation_path(A: CompactSet, v) -> HyperPath:
    """Slide A along the vector v; lipschitz is exactly |v|."""
    v = as_point(v)
    check_dims(A.dim, len(v))

    def fn(t, A=A, v=v):
        return A.translate(tuple(t * c for c in v))

    return HyperPath(start=A, end=A.translate(v), lipschitz=math.hypot(*v),
                     kind="translation", _fn=fn)


def _growth_rate(lo, hi, m, M) -> float:
    """max over a in [lo, hi] and over i of max(a_i - m_i, M_i - a_i)."""
    return max(max(b - mi, Mi - a)
               for a, b, mi, Mi in zip(lo, hi, m, M))


def point_to_box_path(a, m, M) -> HyperPath:
    """Inflate the point a into Box[m, M] around it.

    eval(t) has corners a_i + t*(m_i - a_i) and a_i + t*(M_i - a_i), so the
    boxes grow monotonically from {a} at t=0 to the full box at t=1.  The
    Lipschitz constant is sqrt(n) * S where S is the largest one-axis
    growth max(a_i - m_i, M_i - a_i).
    """
    a = as_point(a)
    box = AxisBox(m, M)
    check_dims(len(a), box.dim)
    if box.lo == box.hi:
        raise PathError("target box must not be a single point")
    for lo_i, x, hi_i in zip(box.lo, a, box.hi):
        if not lo_i <= x <= hi_i:
            raise PathError(f"point {a} is not inside the box {box}")

    def fn(t, a=a, m=box.lo, M=box.hi):
        return AxisBox(_lerp_toward(a, m, t), _lerp_toward(a, M, t))

    rate = _growth_rate(a, a, box.lo, box.hi)
    return HyperPath(start=FiniteSet((a,)), end=box,
                     lipschitz=math.sqrt(len(a)) * rate,
                     kind="point_to_box", _fn=fn)


def set_to_box_path(A: CompactSet, m, M,
                    segment_samples: int = DEFAULT_SEGMENT_SAMPLES) -> HyperPath:
    """Deflate-and-inflate A onto the enclosing Box[m, M].

    Pointwise this runs point_to_box_path from every a in A and takes the
    union.  Finite sets and boxes evaluate in closed form; a segment is
    replaced by sampled anchor points, which costs a certified evaluation
    error of (1-t) * r for covering radius r (recorded in eval_err).
    """
    box = AxisBox(m, M)
    check_dims(A.dim, box.dim)
    if box.lo == box.hi:
        raise PathError("target box must not be a single point")
    bb = A.bounding_box()
    if not box.contains_box(bb):
        raise PathError(f"set with bounds {bb} is not inside the box {box}")
    if segment_samples < 2:
        raise PathError(f"segment_samples must be >= 2, got {segment_samples}")

    sources = []  # ("box", lo, hi) | ("anchors", points)
    eval_err = 0.0
    for prim in A.primitives():
        if isinstance(prim, AxisBox):
            sources.append(("box", prim.lo, prim.hi))
        elif isinstance(prim, FiniteSet):
            sources.append(("anchors", prim.points))
        elif isinstance(prim, Segment):
            k = segment_samples
            anchors = tuple(
                _lerp_toward(prim.p, prim.q, i / (k - 1)) for i in range(k))
            sources.append(("anchors", anchors))
            eval_err = max(eval_err, prim.length / (2.0 * (k - 1)))
        else:
            raise PathError(f"unsupported primitive {type(prim).__name__}")

    def fn(t, A=A, sources=sources, m=box.lo, M=box.hi):
        if t == 0.0:
            return A
        parts = []
        for tag, *data in sources:
            if tag == "box":
                lo, hi = data
                parts.append(AxisBox(_lerp_toward(lo, m, t),
                                     _lerp_toward(hi, M, t)))
            else:
                parts.extend(AxisBox(_lerp_toward(a, m, t),
                                     _lerp_toward(a, M, t))
                             for a in data[0])
        return parts[0] if len(parts) == 1 else UnionSet(tuple(parts))

    rate = _growth_rate(bb.lo, bb.hi, box.lo, box.hi)
    return HyperPath(start=A, end=box,
                     lipschitz=math.sqrt(A.dim) * rate,
                     kind="set_to_box", eval_err=eval_err, _fn=fn)


def reverse(path: HyperPath) -> HyperPath:
    """The same path traversed backwards."""
    def fn(t, path=path):
        return path._fn(1.0 - t)

    return HyperPath(start=path.end, end=path.start,
                     lipschitz=path.lipschitz, kind="reversed",
                     eval_err=path.eval_err, _fn=fn)


def concat(paths) -> HyperPath:
    """Run the given paths in sequence on k equal parameter slices.

    Consecutive endpoints must agree within JUNCTION_TOL in the Hausdorff
    metric; the combined Lipschitz constant is k times the largest leg
    constant.
    """
    paths = tuple(paths)
    if not paths:
        raise PathError("concat needs at least one path")
    for p in paths[1:]:
        check_dims(paths[0].dim, p.dim)
    for j in range(len(paths) - 1):
        gap = metric.hausdorff(paths[j].end, paths[j + 1].start)
        if gap.value + gap.err > JUNCTION_TOL:
            raise JunctionMismatch(
                f"legs {j} and {j + 1} do not meet: endpoint gap "
                f"{gap.value:.3e} exceeds {JUNCTION_TOL}")
    k = len(paths)

    def fn(t, paths=paths, k=k):
        if t >= 1.0:
            return paths[-1]._fn(1.0)
        j = int(t * k)
        inner = t * k - j
        return paths[j]._fn(min(max(inner, 0.0), 1.0))

    return HyperPath(start=paths[0].start, end=paths[-1].end,
                     lipschitz=k * max(p.lipschitz for p in paths),
                     kind="concatenation",
                     eval_err=max(p.eval_err for p in paths), _fn=fn)


def connect(A: CompactSet, B: CompactSet,
            segment_samples: int = DEFAULT_SEGMENT_SAMPLES) -> HyperPath:
    """A three-leg path from A to B: deflate, slide, inflate.

    Both sets are deflated onto congruent enclosing boxes sized to cover
    the larger bounding box on every axis (plus a small pad so the boxes
    never degenerate), and the boxes are joined by a translation.
    """
    check_dims(A.dim, B.dim)
    bb_a, bb_b = A.bounding_box(), B.bounding_box()
    half = [max(ea, eb) / 2.0
            for ea, eb in zip(bb_a.extents(), bb_b.extents())]
    pad = 1e-6 * (1.0 + max(half))
    half = [h + pad for h in half]
    center_a, center_b = bb_a.center(), bb_b.center()
    box_a = AxisBox(tuple(c - e for c, e in zip(center_a, half)),
                    tuple(c + e for c, e in zip(center_a, half)))
    shift = tuple(cb - ca for ca, cb in zip(center_a, center_b))
    box_b = box_a.translate(shift)
    return concat((
        set_to_box_path(A, box_a.lo, box_a.hi, segment_samples),
        translation_path(box_a, shift),
        reverse(set_to_box_path(B, box_b.lo, box_b.hi, segment_samples)),
    ))


def contraction_gap(a, a2, m, M, t: float) -> float:
    """h between the boxes grown from a and a2 at time t (exact).

    Both points must lie inside Box[m, M].  The gap contracts as the boxes
    grow: it never exceeds (1 - t) * d(a, a2).
    """
    a, a2 = as_point(a), as_point(a2)
    box = AxisBox(m, M)
    check_dims(len(a), box.dim)
    check_dims(len(a2), box.dim)
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise PathError(f"t outside [0, 1]: {t}")
    for x in (a, a2):
        for lo_i, xi, hi_i in zip(box.lo, x, box.hi):
            if not lo_i <= xi <= hi_i:
                raise PathError(f"point {x} is not inside the box {box}")
    box_1 = AxisBox(_lerp_toward(a, box.lo, t), _lerp_toward(a, box.hi, t))
    box_2 = AxisBox(_lerp_toward(a2, box.lo, t), _lerp_toward(a2, box.hi, t))
    return metric.hausdorff(box_1, box_2).value


# --- JSON path documents -----------------------------------------------
#
# {"kind": "translation", "dim": n, "set": node, "vector": [...]}
# {"kind": "point_to_box", "dim": n, "a": [...], "m": [...], "M": [...]}
# {"kind": "set_to_box", "dim": n, "set": node, "m": [...], "M": [...]}
# {"kind": "reversed", "path": doc}
# {"kind": "concatenation", "paths": [doc, ...]}
# {"kind": "connect", "dim": n, "a": node, "b": node}
#
# set_to_box and connect accept an optional integer "segment_samples".


def path_from_document(doc) -> HyperPath:
    """Build a path from its JSON document structure."""
    if not isinstance(doc, dict):
        raise DocumentError(f"path document must be an object, got "
                            f"{type(doc).__name__}")
    kind = doc.get("kind")
    if kind == "reversed":
        return reverse(path_from_document(_doc_get(doc, "path", dict)))
    if kind == "concatenation":
        legs = _doc_get(doc, "paths", list)
        if not legs:
            raise DocumentError("'paths' must be a non-empty list")
        return concat(tuple(path_from_document(leg) for leg in legs))
    dim = _doc_get(doc, "dim", int)
    if dim < 1:
        raise DocumentError(f"'dim' must be a positive integer, got {dim}")
    if kind == "translation":
        A = set_from_node(_doc_get(doc, "set", dict), dim)
        return translation_path(A, _doc_coords(doc, "vector", dim))
    if kind == "point_to_box":
        return point_to_box_path(_doc_coords(doc, "a", dim),
                                 _doc_coords(doc, "m", dim),
                                 _doc_coords(doc, "M", dim))
    if kind == "set_to_box":
        A = set_from_node(_doc_get(doc, "set", dict), dim)
        return set_to_box_path(A, _doc_coords(doc, "m", dim),
                               _doc_coords(doc, "M", dim),
                               _doc_samples(doc))
    if kind == "connect":
        A = set_from_node(_doc_get(doc, "a", dict), dim)
        B = set_from_node(_doc_get(doc, "b", dict), dim)
        return connect(A, B, _doc_samples(doc))
    raise DocumentError(f"unknown path kind: {kind!r}")


def _doc_get(doc: dict, key: str, want=None, dim=None):
    if key not in doc:
        raise DocumentError(f"path document is missing {key!r}")
    value = doc[key]
    want = dict if want is None else want
    if want is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise DocumentError(f"{key!r} must be an integer, got {value!r}")
    elif not isinstance(value, want):
        raise DocumentError(f"{key!r} must be a {want.__name__}")
    return value


def _doc_coords(doc: dict, key: str, dim: int) -> tuple:
    value = _doc_get(doc, key, list)
    try:
        pt = as_point(value)
    except GeometryError as exc:
        raise DocumentError(f"bad coordinates for {key!r}: {exc}") from exc
    if len(pt) != dim:
        raise DocumentError(f"{key!r} has dimension {len(pt)}, "
                            f"document says {dim}")
    return pt


def _doc_samples(doc: dict) -> int:
    if "segment_samples" not in doc:
        return DEFAULT_SEGMENT_SAMPLES
    return _doc_get(doc, "segment_samples", int)
