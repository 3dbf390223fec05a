"""Shape constructors, validation, and the basic set operations."""

import math

import pytest

from hyperspace.geometry import (
    AxisBox,
    DimensionMismatch,
    FiniteSet,
    GeometryError,
    Segment,
    UnionSet,
    as_point,
    bounding_box,
    box_boundary,
    canonical_box,
    check_dims,
    contains_point,
    translate,
)


class TestAsPoint:
    def test_coerces_ints_and_floats(self):
        assert as_point([1, 2.5]) == (1.0, 2.5)
        assert all(isinstance(c, float) for c in as_point((3, 4)))

    def test_rejects_empty(self):
        with pytest.raises(GeometryError):
            as_point(())

    def test_rejects_non_finite(self):
        with pytest.raises(GeometryError):
            as_point((0.0, math.inf))
        with pytest.raises(GeometryError):
            as_point((math.nan,))

    def test_rejects_non_numeric(self):
        with pytest.raises(GeometryError):
            as_point("ab")
        with pytest.raises(GeometryError):
            as_point(7)


def test_check_dims_raises_on_mismatch():
    check_dims(3, 3)
    with pytest.raises(DimensionMismatch):
        check_dims(2, 3)


class TestFiniteSet:
    def test_basic(self):
        A = FiniteSet(((0, 0), (1, 2)))
        assert A.dim == 2
        assert A.points == ((0.0, 0.0), (1.0, 2.0))

    def test_rejects_empty(self):
        with pytest.raises(GeometryError):
            FiniteSet(())

    def test_rejects_mixed_dims(self):
        with pytest.raises(DimensionMismatch):
            FiniteSet(((0.0,), (1.0, 2.0)))

    def test_translate(self):
        A = FiniteSet(((0, 0), (1, 2)))
        assert A.translate((1, -1)).points == ((1.0, -1.0), (2.0, 1.0))

    def test_bounding_box(self):
        A = FiniteSet(((3, -1), (0, 4), (2, 2)))
        assert A.bounding_box() == AxisBox((0, -1), (3, 4))

    def test_hashable_and_equal(self):
        assert FiniteSet(((1, 2),)) == FiniteSet(((1.0, 2.0),))
        assert hash(FiniteSet(((1, 2),))) == hash(FiniteSet(((1.0, 2.0),)))


class TestAxisBox:
    def test_rejects_unordered_corners(self):
        with pytest.raises(GeometryError):
            AxisBox((1.0, 0.0), (0.0, 1.0))

    def test_degenerate_axes_allowed(self):
        box = AxisBox((1.0, 2.0), (1.0, 5.0))
        assert box.extents() == (0.0, 3.0)

    def test_center_and_extents(self):
        box = AxisBox((0.0, -2.0), (4.0, 2.0))
        assert box.center() == (2.0, 0.0)
        assert box.extents() == (4.0, 4.0)

    def test_vertices_enumerates_all_corners(self):
        box = AxisBox((0.0, 0.0), (1.0, 2.0))
        vs = set(box.vertices())
        assert vs == {(0, 0), (1, 0), (0, 2), (1, 2)}
        assert len(list(box.vertices())) == 4

    def test_contains_box(self):
        outer = AxisBox((0.0, 0.0), (10.0, 10.0))
        assert outer.contains_box(AxisBox((1.0, 1.0), (9.0, 9.0)))
        assert outer.contains_box(outer)
        assert not outer.contains_box(AxisBox((1.0, 1.0), (11.0, 9.0)))

    def test_translate(self):
        box = AxisBox((0.0, 0.0), (1.0, 1.0)).translate((2.0, -1.0))
        assert box == AxisBox((2.0, -1.0), (3.0, 0.0))


class TestSegment:
    def test_length(self):
        assert Segment((0, 0), (3, 4)).length == 5.0
        assert Segment((1, 1), (1, 1)).length == 0.0

    def test_rejects_mixed_dims(self):
        with pytest.raises(DimensionMismatch):
            Segment((0.0,), (1.0, 2.0))

    def test_bounding_box_is_canonical(self):
        seg = Segment((2.0, 0.0), (0.0, 3.0))
        assert seg.bounding_box() == AxisBox((0.0, 0.0), (2.0, 3.0))

    def test_translate(self):
        seg = Segment((0, 0), (1, 0)).translate((0, 5))
        assert seg == Segment((0.0, 5.0), (1.0, 5.0))


class TestUnionSet:
    def test_rejects_empty(self):
        with pytest.raises(GeometryError):
            UnionSet(())

    def test_rejects_non_set_parts(self):
        with pytest.raises(GeometryError):
            UnionSet(((0.0, 1.0),))

    def test_rejects_mixed_dims(self):
        with pytest.raises(DimensionMismatch):
            UnionSet((FiniteSet(((0.0,),)), Segment((0, 0), (1, 1))))

    def test_primitives_flatten_nested_unions(self):
        inner = UnionSet((FiniteSet(((0.0, 0.0),)), Segment((0, 0), (1, 1))))
        outer = UnionSet((inner, AxisBox((2, 2), (3, 3))))
        kinds = [type(p).__name__ for p in outer.primitives()]
        assert kinds == ["FiniteSet", "Segment", "AxisBox"]

    def test_bounding_box_covers_all_parts(self):
        U = UnionSet((FiniteSet(((-1.0, 0.0),)), AxisBox((0, -2), (3, 1))))
        assert U.bounding_box() == AxisBox((-1.0, -2.0), (3.0, 1.0))

    def test_translate_translates_parts(self):
        U = UnionSet((FiniteSet(((0.0, 0.0),)), Segment((0, 0), (1, 0))))
        V = U.translate((1.0, 1.0))
        assert V.parts[0].points == ((1.0, 1.0),)
        assert V.parts[1] == Segment((1.0, 1.0), (2.0, 1.0))


def test_canonical_box_sorts_corners():
    assert canonical_box((3.0, -1.0), (1.0, 2.0)) == AxisBox((1, -1), (3, 2))
    assert canonical_box((1, 2), (3, 4)) == canonical_box((3, 4), (1, 2))


class TestBoxBoundary:
    def test_four_edges_forming_a_loop(self):
        U = box_boundary((0.0, 0.0), (2.0, 1.0))
        assert len(U.parts) == 4
        for a, b in zip(U.parts, U.parts[1:] + U.parts[:1]):
            assert a.q == b.p

    def test_covers_corners_only_on_edges(self):
        U = box_boundary((0.0, 0.0), (2.0, 1.0))
        assert contains_point(U, (0.0, 0.0))
        assert contains_point(U, (1.0, 0.0))
        assert not contains_point(U, (1.0, 0.5))

    def test_requires_dimension_two(self):
        with pytest.raises(GeometryError):
            box_boundary((0.0,), (1.0,))
        with pytest.raises(GeometryError):
            box_boundary((0, 0, 0), (1, 1, 1))


def test_functional_wrappers_delegate():
    A = FiniteSet(((1.0, 1.0),))
    assert translate(A, (1, 0)).points == ((2.0, 1.0),)
    assert bounding_box(A) == AxisBox((1, 1), (1, 1))


class TestContainsPoint:
    def test_exact_membership(self):
        box = AxisBox((0.0, 0.0), (1.0, 1.0))
        assert contains_point(box, (0.5, 0.5))
        assert contains_point(box, (1.0, 1.0))
        assert not contains_point(box, (1.0, 1.1))

    def test_tolerance(self):
        box = AxisBox((0.0, 0.0), (1.0, 1.0))
        assert contains_point(box, (1.05, 0.5), tol=0.1)
        assert not contains_point(box, (1.05, 0.5), tol=0.01)

    def test_rejects_negative_tol(self):
        with pytest.raises(GeometryError):
            contains_point(AxisBox((0.0,), (1.0,)), (0.5,), tol=-1e-9)
