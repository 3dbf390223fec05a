"""Property-based checks of the metric and geometry invariants."""

import math

from hypothesis import given, settings, strategies as st

from hyperspace.geometry import (
    AxisBox,
    FiniteSet,
    Segment,
    UnionSet,
    canonical_box,
    dumps_set,
    loads_set,
)
from hyperspace.metric import (
    brute_force_hausdorff,
    hausdorff,
    nested_box_hausdorff,
    point_to_set,
)
from hyperspace.paths import translation_path


def coords(dim, bound=5.0):
    scalar = st.floats(-bound, bound, allow_nan=False, allow_infinity=False)
    return st.lists(scalar, min_size=dim, max_size=dim).map(tuple)


@st.composite
def simple_sets(draw, dim=2):
    kind = draw(st.sampled_from(["points", "box", "segment"]))
    if kind == "points":
        pts = draw(st.lists(coords(dim), min_size=1, max_size=4))
        return FiniteSet(tuple(pts))
    if kind == "box":
        return canonical_box(draw(coords(dim)), draw(coords(dim)))
    return Segment(draw(coords(dim)), draw(coords(dim)))


@st.composite
def compact_sets(draw, dim=2):
    if draw(st.booleans()):
        return draw(simple_sets(dim))
    parts = draw(st.lists(simple_sets(dim), min_size=2, max_size=3))
    return UnionSet(tuple(parts))


@st.composite
def finite_sets(draw, dim=2):
    pts = draw(st.lists(coords(dim), min_size=1, max_size=5))
    return FiniteSet(tuple(pts))


class TestMetricAxiomsOnFiniteSets:
    # Finite-to-finite distances are exact, so the axioms hold with at
    # most accumulated float rounding as slack.

    @given(finite_sets(), finite_sets())
    def test_symmetry_is_exact(self, A, B):
        assert hausdorff(A, B).value == hausdorff(B, A).value

    @given(finite_sets())
    def test_identity(self, A):
        assert hausdorff(A, A).value == 0.0

    @given(finite_sets(), finite_sets())
    def test_non_negative(self, A, B):
        assert hausdorff(A, B).value >= 0.0

    @given(finite_sets(), finite_sets(), finite_sets())
    def test_triangle_inequality(self, A, B, C):
        h_ab = hausdorff(A, B).value
        h_ac = hausdorff(A, C).value
        h_cb = hausdorff(C, B).value
        assert h_ab <= h_ac + h_cb + 1e-12


class TestPointField:
    @given(compact_sets(), coords(2, 8.0), coords(2, 8.0))
    def test_distance_field_is_one_lipschitz(self, B, x, y):
        dx = point_to_set(x, B)
        dy = point_to_set(y, B)
        assert abs(dx - dy) <= math.dist(x, y) + 1e-12

    @given(compact_sets(), coords(2, 8.0))
    def test_distance_field_is_non_negative(self, B, x):
        assert point_to_set(x, B) >= 0.0


class TestGeometryInvariants:
    @given(coords(3), coords(3))
    def test_canonical_box_is_order_free(self, u, v):
        box = canonical_box(u, v)
        assert box == canonical_box(v, u)
        assert all(a <= b for a, b in zip(box.lo, box.hi))

    dyadic = st.integers(-512, 512).map(lambda k: k / 64.0)

    @given(st.lists(dyadic, min_size=2, max_size=2).map(tuple),
           st.lists(dyadic, min_size=2, max_size=2).map(tuple))
    def test_translate_round_trip_is_exact_on_dyadics(self, p, v):
        A = FiniteSet((p,))
        back = A.translate(v).translate(tuple(-c for c in v))
        assert back == A

    @given(compact_sets())
    def test_document_round_trip_is_exact(self, A):
        assert loads_set(dumps_set(A)) == A

    @given(compact_sets(), coords(2))
    def test_translation_preserves_bounding_box_shape(self, A, v):
        bb = A.bounding_box()
        moved = A.translate(v).bounding_box()
        for a, b, c, d in zip(bb.lo, moved.lo, bb.hi, moved.hi):
            assert math.isclose(d - b, c - a, abs_tol=1e-9)


class TestClosedForms:
    @given(coords(3, 4.0), coords(3, 4.0),
           st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    def test_nested_box_matches_certified(self, u, v, s1, s2):
        outer = canonical_box(u, v)
        lo = tuple(a + s1 * 0.5 * (b - a) for a, b in zip(outer.lo, outer.hi))
        hi = tuple(b - s2 * 0.5 * (b - a) for a, b in zip(outer.lo, outer.hi))
        inner = AxisBox(lo, hi)
        closed = nested_box_hausdorff(inner, outer)
        h = hausdorff(inner, outer)
        assert h.err == 0.0
        assert abs(closed - h.value) <= 1e-12

    @given(coords(2, 4.0), coords(2, 4.0),
           st.floats(0.0, 1.0), st.floats(0.0, 1.0))
    def test_singleton_translation_modulus_is_sharp(self, a, v, t1, t2):
        p = translation_path(FiniteSet((a,)), v)
        h = hausdorff(p.eval(t1), p.eval(t2)).value
        assert abs(h - abs(t2 - t1) * math.hypot(*v)) <= 1e-9


class TestOracleEnclosure:
    @settings(max_examples=25, deadline=None)
    @given(simple_sets(1), simple_sets(1))
    def test_brute_force_stays_within_resolution(self, A, B):
        exact = hausdorff(A, B)
        brute = brute_force_hausdorff(A, B, 0.05)
        assert abs(exact.value - brute.value) <= 0.05 + exact.err + 1e-12
