"""Representable non-empty compact subsets of R^n.

Four shapes cover everything the library handles: finite point sets, axis
aligned boxes, line segments, and finite unions of those.  Every value is
immutable and hashable, coordinates are plain floats, and the dimension is
part of the value: binary operations refuse to mix dimensions.

The JSON document format for sets lives here too (``set_to_document`` and
friends); the CLI reads and writes it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterator

Point = tuple  # n finite floats, n >= 1; doubles as a translation vector


class GeometryError(ValueError):
    """Malformed geometric value or an operation outside its domain."""


class DimensionMismatch(GeometryError):
    """Operands live in spaces of different dimension."""


class DocumentError(GeometryError):
    """A JSON set or path description failed to parse."""


def as_point(coords) -> Point:
    """Coerce a coordinate sequence to a point: a tuple of finite floats."""
    try:
        pt = tuple(float(c) for c in coords)
    except (TypeError, ValueError) as exc:
        raise GeometryError(f"not a coordinate sequence: {coords!r}") from exc
    if not pt:
        raise GeometryError("a point needs at least one coordinate")
    for c in pt:
        if not math.isfinite(c):
            raise GeometryError(f"non-finite coordinate in {pt!r}")
    return pt


def check_dims(n: int, m: int) -> None:
    if n != m:
        raise DimensionMismatch(f"dimension mismatch: {n} vs {m}")


class CompactSet:
    """Base class of the representable compact sets."""

    @property
    def dim(self) -> int:
        raise NotImplementedError

    def translate(self, v) -> "CompactSet":
        raise NotImplementedError

    def bounding_box(self) -> "AxisBox":
        raise NotImplementedError

    def primitives(self) -> Iterator["CompactSet"]:
        """Yield the non-union leaves, left to right."""
        yield self


@dataclass(frozen=True)
class FiniteSet(CompactSet):
    """A non-empty finite set of points."""

    points: tuple

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.points)
        if not pts:
            raise GeometryError("finite set must contain at least one point")
        for p in pts[1:]:
            check_dims(len(pts[0]), len(p))
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def translate(self, v) -> "FiniteSet":
        v = as_point(v)
        check_dims(self.dim, len(v))
        return FiniteSet(tuple(_shift(p, v) for p in self.points))

    def bounding_box(self) -> "AxisBox":
        lo = tuple(min(p[i] for p in self.points) for i in range(self.dim))
        hi = tuple(max(p[i] for p in self.points) for i in range(self.dim))
        return AxisBox(lo, hi)


@dataclass(frozen=True)
class AxisBox(CompactSet):
    """An axis-aligned box [lo_1,hi_1] x ... x [lo_n,hi_n], lo <= hi.

    Degenerate extents are legal, so single points and axis-parallel
    segments have box representations as well.
    """

    lo: Point
    hi: Point

    def __post_init__(self):
        lo, hi = as_point(self.lo), as_point(self.hi)
        check_dims(len(lo), len(hi))
        for a, b in zip(lo, hi):
            if a > b:
                raise GeometryError(f"box corners not ordered: {lo} vs {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return len(self.lo)

    def translate(self, v) -> "AxisBox":
        v = as_point(v)
        check_dims(self.dim, len(v))
        return AxisBox(_shift(self.lo, v), _shift(self.hi, v))

    def bounding_box(self) -> "AxisBox":
        return self

    def center(self) -> Point:
        return tuple(0.5 * (a + b) for a, b in zip(self.lo, self.hi))

    def extents(self) -> Point:
        return tuple(b - a for a, b in zip(self.lo, self.hi))

    def vertices(self) -> Iterator[Point]:
        """All 2^dim corners (with repeats collapsing on degenerate axes)."""
        n = self.dim
        for mask in range(1 << n):
            yield tuple(self.hi[i] if mask >> i & 1 else self.lo[i]
                        for i in range(n))

    def contains_box(self, other: "AxisBox") -> bool:
        check_dims(self.dim, other.dim)
        return all(a <= c and d <= b for a, c, d, b in
                   zip(self.lo, other.lo, other.hi, self.hi))


@dataclass(frozen=True)
class Segment(CompactSet):
    """The closed line segment between two points (possibly equal)."""

    p: Point
    q: Point

    def __post_init__(self):
        p, q = as_point(self.p), as_point(self.q)
        check_dims(len(p), len(q))
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def dim(self) -> int:
        return len(self.p)

    @property
    def length(self) -> float:
        return math.dist(self.p, self.q)

    def translate(self, v) -> "Segment":
        v = as_point(v)
        check_dims(self.dim, len(v))
        return Segment(_shift(self.p, v), _shift(self.q, v))

    def bounding_box(self) -> AxisBox:
        return canonical_box(self.p, self.q)


@dataclass(frozen=True)
class UnionSet(CompactSet):
    """A finite union of compact sets, all of the same dimension."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise GeometryError("union must have at least one part")
        for part in parts:
            if not isinstance(part, CompactSet):
                raise GeometryError(f"union part is not a set: {part!r}")
        for part in parts[1:]:
            check_dims(parts[0].dim, part.dim)
        object.__setattr__(self, "parts", parts)

    @property
    def dim(self) -> int:
        return self.parts[0].dim

    def translate(self, v) -> "UnionSet":
        return UnionSet(tuple(part.translate(v) for part in self.parts))

    def bounding_box(self) -> AxisBox:
        boxes = [part.bounding_box() for part in self.parts]
        lo = tuple(min(b.lo[i] for b in boxes) for i in range(self.dim))
        hi = tuple(max(b.hi[i] for b in boxes) for i in range(self.dim))
        return AxisBox(lo, hi)

    def primitives(self) -> Iterator[CompactSet]:
        for part in self.parts:
            yield from part.primitives()


def _shift(p: Point, v: Point) -> Point:
    return tuple(a + b for a, b in zip(p, v))


def canonical_box(u, v) -> AxisBox:
    """The box spanned by two arbitrary corner points, in either order."""
    u, v = as_point(u), as_point(v)
    check_dims(len(u), len(v))
    lo = tuple(min(a, b) for a, b in zip(u, v))
    hi = tuple(max(a, b) for a, b in zip(u, v))
    return AxisBox(lo, hi)


def box_boundary(lo, hi) -> UnionSet:
    """The four edge segments of a 2D box, as a union.

    Only defined in dimension 2; degenerate edges are kept so the result
    always has four parts.
    """
    box = AxisBox(lo, hi)
    if box.dim != 2:
        raise GeometryError(f"box_boundary needs dimension 2, got {box.dim}")
    (x0, y0), (x1, y1) = box.lo, box.hi
    return UnionSet((
        Segment((x0, y0), (x1, y0)),
        Segment((x1, y0), (x1, y1)),
        Segment((x1, y1), (x0, y1)),
        Segment((x0, y1), (x0, y0)),
    ))


def translate(A: CompactSet, v) -> CompactSet:
    """The set A shifted by the vector v."""
    return A.translate(v)


def bounding_box(A: CompactSet) -> AxisBox:
    """The smallest axis-aligned box containing A."""
    return A.bounding_box()


def contains_point(A: CompactSet, x, tol: float = 0.0) -> bool:
    """Whether x lies within distance tol of A."""
    from . import metric

    if tol < 0:
        raise GeometryError(f"tol must be non-negative, got {tol}")
    return metric.point_to_set(x, A) <= tol


# --- JSON set documents ----------------------------------------------------
#
# {"dim": n, "set": node} where a node is one of
#   {"type": "points", "coords": [[...], ...]}
#   {"type": "box", "lo": [...], "hi": [...]}
#   {"type": "segment", "p": [...], "q": [...]}
#   {"type": "union", "parts": [node, ...]}
#   {"type": "box_boundary", "lo": [...], "hi": [...]}   (2D, parse only)


def set_to_document(A: CompactSet) -> dict:
    """Serialize a set to its JSON document structure."""
    return {"dim": A.dim, "set": _node_from_set(A)}


def set_from_document(doc) -> CompactSet:
    """Parse a JSON document structure back into a set."""
    if not isinstance(doc, dict):
        raise DocumentError(f"set document must be an object, got {type(doc).__name__}")
    for key in doc:
        if key not in ("dim", "set"):
            raise DocumentError(f"unknown key in set document: {key!r}")
    if "dim" not in doc or "set" not in doc:
        raise DocumentError("set document needs 'dim' and 'set' keys")
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise DocumentError(f"'dim' must be a positive integer, got {dim!r}")
    A = set_from_node(doc["set"], dim)
    return A


def set_from_node(node, dim: int) -> CompactSet:
    """Parse one node of a set document; dim is the required dimension."""
    if not isinstance(node, dict):
        raise DocumentError(f"set node must be an object, got {type(node).__name__}")
    kind = node.get("type")
    try:
        if kind == "points":
            pts = _coord_list(node, "coords")
            return _check_doc_dim(FiniteSet(tuple(pts)), dim)
        if kind == "box":
            return _check_doc_dim(
                AxisBox(_coords(node, "lo"), _coords(node, "hi")), dim)
        if kind == "segment":
            return _check_doc_dim(
                Segment(_coords(node, "p"), _coords(node, "q")), dim)
        if kind == "union":
            parts = node.get("parts")
            if not isinstance(parts, list) or not parts:
                raise DocumentError("'parts' must be a non-empty list")
            return UnionSet(tuple(set_from_node(p, dim) for p in parts))
        if kind == "box_boundary":
            if dim != 2:
                raise DocumentError("box_boundary is only valid with dim 2")
            return box_boundary(_coords(node, "lo"), _coords(node, "hi"))
    except GeometryError as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(str(exc)) from exc
    raise DocumentError(f"unknown set node type: {kind!r}")


def _node_from_set(A: CompactSet) -> dict:
    if isinstance(A, FiniteSet):
        return {"type": "points", "coords": [list(p) for p in A.points]}
    if isinstance(A, AxisBox):
        return {"type": "box", "lo": list(A.lo), "hi": list(A.hi)}
    if isinstance(A, Segment):
        return {"type": "segment", "p": list(A.p), "q": list(A.q)}
    if isinstance(A, UnionSet):
        return {"type": "union", "parts": [_node_from_set(p) for p in A.parts]}
    raise GeometryError(f"cannot serialize {type(A).__name__}")


def _check_doc_dim(A: CompactSet, dim: int) -> CompactSet:
    if A.dim != dim:
        raise DocumentError(f"node has dimension {A.dim}, document says {dim}")
    return A


def _coords(node: dict, key: str):
    value = node.get(key)
    if not isinstance(value, list):
        raise DocumentError(f"{key!r} must be a list of numbers")
    return [_number(c, key) for c in value]


def _coord_list(node: dict, key: str):
    value = node.get(key)
    if not isinstance(value, list) or not value:
        raise DocumentError(f"{key!r} must be a non-empty list")
    out = []
    for row in value:
        if not isinstance(row, list):
            raise DocumentError(f"every entry of {key!r} must be a list")
        out.append([_number(c, key) for c in row])
    return out


def _number(c, key: str) -> float:
    if isinstance(c, bool) or not isinstance(c, (int, float)):
        raise DocumentError(f"non-numeric coordinate in {key!r}: {c!r}")
    if not math.isfinite(c):
        raise DocumentError(f"non-finite coordinate in {key!r}: {c!r}")
    return float(c)


def _reject_constant(name: str):
    raise DocumentError(f"non-finite number in document: {name}")


def loads_json(text: str):
    """json.loads that rejects NaN/Infinity literals."""
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc


def loads_set(text: str) -> CompactSet:
    """Parse a set from JSON text."""
    return set_from_document(loads_json(text))


def dumps_set(A: CompactSet) -> str:
    """Serialize a set to JSON text (floats keep full precision)."""
    return json.dumps(set_to_document(A))
