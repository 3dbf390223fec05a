"""The randomized verification suites and their reports."""

import pytest

from hyperspace.geometry import AxisBox, FiniteSet, Segment, UnionSet
from hyperspace.paths import HyperPath, translation_path
from hyperspace.verify import (
    CaseFailure,
    SetGenerator,
    SuiteReport,
    merge_reports,
    run_contraction,
    run_metric_axioms,
    run_oracle_equivalence,
    run_path_modulus,
)


class TestSetGenerator:
    def test_deterministic_for_a_seed(self):
        a = SetGenerator(2, seed=5).sets(20)
        b = SetGenerator(2, seed=5).sets(20)
        assert a == b

    def test_seeds_differ(self):
        assert SetGenerator(2, seed=1).sets(10) != SetGenerator(2, seed=2).sets(10)

    def test_respects_dimension(self):
        for A in SetGenerator(3, seed=0).sets(25):
            assert A.dim == 3

    def test_draws_every_shape_kind(self):
        kinds = {type(A) for A in SetGenerator(2, seed=0).sets(80)}
        assert kinds == {FiniteSet, AxisBox, Segment, UnionSet}

    def test_unions_have_bounded_arity(self):
        for A in SetGenerator(1, seed=3, max_union=3).sets(60):
            if isinstance(A, UnionSet):
                assert 2 <= len(A.parts) <= 3


class TestMetricAxiomsSuite:
    def test_passes_on_random_sets(self):
        for dim in (1, 2, 3):
            report = run_metric_axioms(SetGenerator(dim, seed=dim), cases=25)
            assert report.passed, report.failures
            assert report.cases == 25
            assert report.elapsed > 0.0


class TestPathModulusSuite:
    def test_translation_path_passes(self):
        p = translation_path(FiniteSet(((0.0, 0.0), (1.0, 1.0))), (2.0, -1.0))
        report = run_path_modulus(p, grid=21)
        assert report.passed
        assert report.cases == 21 * 20 // 2 + 2

    def test_detects_understated_lipschitz(self):
        honest = translation_path(FiniteSet(((0.0,),)), (4.0,))
        liar = HyperPath(start=honest.start, end=honest.end,
                         lipschitz=0.5, kind="translation",
                         _fn=honest._fn)
        report = run_path_modulus(liar, grid=11)
        assert not report.passed
        assert any("modulus" in f.description for f in report.failures)

    def test_detects_endpoint_mismatch(self):
        honest = translation_path(FiniteSet(((0.0,),)), (1.0,))
        broken = HyperPath(start=FiniteSet(((9.0,),)), end=honest.end,
                           lipschitz=honest.lipschitz, kind="translation",
                           _fn=honest._fn)
        report = run_path_modulus(broken, grid=5)
        assert any("eval(0) vs start" in f.description
                   for f in report.failures)


class TestOracleSuite:
    def test_passes_on_small_sets(self):
        report = run_oracle_equivalence(SetGenerator(1, seed=2, scale=1.0),
                                        cases=8)
        assert report.passed
        assert report.skipped == 0

    def test_over_budget_cases_are_skipped(self):
        report = run_oracle_equivalence(SetGenerator(2, seed=4, scale=4.0),
                                        cases=6, resolution=1e-3,
                                        max_points=500)
        assert report.skipped > 0
        assert report.passed


class TestContractionSuite:
    def test_passes_in_low_dims(self):
        for dim in (1, 2, 3):
            report = run_contraction(dim, cases=50, seed=dim)
            assert report.passed, report.failures
            assert report.cases == 50


class TestReports:
    def test_merge_concatenates_counts_and_failures(self):
        a = SuiteReport("s", 3, elapsed=0.5)
        b = SuiteReport("s", 4, skipped=1, elapsed=0.25)
        b.failures.append(CaseFailure(0, 7, "boom", 2.0, 1.0))
        merged = merge_reports("s", [a, b])
        assert merged.cases == 7
        assert merged.skipped == 1
        assert merged.elapsed == 0.75
        assert not merged.passed

    def test_as_dict_round_trips_through_json(self):
        import json

        rep = SuiteReport("s", 1)
        rep.failures.append(CaseFailure(0, 1, "d", 1.5, 1.0))
        encoded = json.loads(json.dumps(rep.as_dict()))
        assert encoded["failures"][0]["description"] == "d"
        assert encoded["cases"] == 1
