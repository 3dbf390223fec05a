"""Randomized verification suites.

Each suite draws reproducible cases from a seeded generator, checks a
metric or path contract at a stated tolerance, and reports violations in a
SuiteReport.  Certified error bounds from the metric module are folded
into every bound, so a failure is a genuine counterexample and not noise.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import metric
from .geometry import CompactSet, FiniteSet, Segment, UnionSet, canonical_box
from .metric import DEFAULT_POINT_BUDGET, DEFAULT_TOL, PointBudgetError
from .paths import HyperPath, contraction_gap

ENDPOINT_TOL = 1e-9


@dataclass(frozen=True)
class CaseFailure:
    """One violated check, reproducible from the generator seed."""

    case: int
    seed: int
    description: str
    observed: float
    bound: float

    def as_dict(self) -> dict:
        return {"case": self.case, "seed": self.seed,
                "description": self.description,
                "observed": self.observed, "bound": self.bound}


@dataclass
class SuiteReport:
    suite: str
    cases: int
    failures: list = field(default_factory=list)
    skipped: int = 0
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"suite": self.suite, "cases": self.cases,
                "failures": [f.as_dict() for f in self.failures],
                "skipped": self.skipped, "elapsed": self.elapsed}


def merge_reports(name: str, reports) -> SuiteReport:
    out = SuiteReport(name, 0)
    for rep in reports:
        out.cases += rep.cases
        out.failures.extend(rep.failures)
        out.skipped += rep.skipped
        out.elapsed += rep.elapsed
    return out


@dataclass
class SetGenerator:
    """Deterministic random compact sets: same seed, same sequence."""

    dim: int
    seed: int = 0
    scale: float = 5.0
    weights: tuple = (0.35, 0.30, 0.20, 0.15)  # points, box, segment, union
    max_points: int = 5
    max_union: int = 4

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def sets(self, count: int) -> list:
        rng = self.rng()
        return [self._draw(rng) for _ in range(count)]

    def _point(self, rng) -> tuple:
        return tuple(rng.uniform(-self.scale, self.scale, self.dim))

    def _draw(self, rng, allow_union: bool = True) -> CompactSet:
        weights = np.asarray(self.weights, dtype=float)
        if not allow_union:
            weights = weights[:3]
        kind = rng.choice(len(weights), p=weights / weights.sum())
        if kind == 0:
            count = int(rng.integers(1, self.max_points + 1))
            return FiniteSet(tuple(self._point(rng) for _ in range(count)))
        if kind == 1:
            return canonical_box(self._point(rng), self._point(rng))
        if kind == 2:
            return Segment(self._point(rng), self._point(rng))
        arity = int(rng.integers(2, self.max_union + 1))
        return UnionSet(tuple(self._draw(rng, allow_union=False)
                              for _ in range(arity)))


def run_metric_axioms(gen: SetGenerator, cases: int = 100,
                      tol: float = DEFAULT_TOL) -> SuiteReport:
    """Non-negativity, h(A,A)=0, symmetry and the triangle inequality.

    Symmetry gets 2 certified errors of slack, the triangle inequality 3,
    since each distance is only known to within its err.
    """
    start = time.perf_counter()
    report = SuiteReport("metric-axioms", cases)
    draws = gen.sets(3 * cases)
    for case in range(cases):
        A, B, C = draws[3 * case:3 * case + 3]
        h_ab = metric.hausdorff(A, B, tol)
        h_ba = metric.hausdorff(B, A, tol)
        h_ac = metric.hausdorff(A, C, tol)
        h_cb = metric.hausdorff(C, B, tol)
        h_aa = metric.hausdorff(A, A, tol)

        def fail(description, observed, bound):
            report.failures.append(CaseFailure(case, gen.seed, description,
                                               observed, bound))
        if not (math.isfinite(h_ab.value) and h_ab.value >= 0.0):
            fail("h(A,B) must be finite and non-negative", h_ab.value, 0.0)
        if h_aa.value > h_aa.err + tol:
            fail("h(A,A) = 0", h_aa.value, h_aa.err + tol)
        sym_slack = h_ab.err + h_ba.err + 1e-12
        if abs(h_ab.value - h_ba.value) > sym_slack:
            fail("symmetry |h(A,B) - h(B,A)|",
                 abs(h_ab.value - h_ba.value), sym_slack)
        tri_slack = h_ab.err + h_ac.err + h_cb.err + 1e-12
        if h_ab.value > h_ac.value + h_cb.value + tri_slack:
            fail("triangle h(A,B) <= h(A,C) + h(C,B)",
                 h_ab.value, h_ac.value + h_cb.value + tri_slack)
    report.elapsed = time.perf_counter() - start
    return report


def run_path_modulus(path: HyperPath, grid: int = 101,
                     tol: float = DEFAULT_TOL, seed: int = -1) -> SuiteReport:
    """Endpoint agreement plus the Lipschitz modulus on a uniform grid.

    Checks h(eval(t_i), eval(t_j)) <= lipschitz*|t_i - t_j| + 2*eval_err
    for every grid pair, with the distance's certified err and tol as
    additional slack.
    """
    start = time.perf_counter()
    ts = np.linspace(0.0, 1.0, grid)
    frames = [path.eval(t) for t in ts]
    pairs = grid * (grid - 1) // 2
    report = SuiteReport("path-modulus", pairs + 2)
    for name, frame, target in (("eval(0) vs start", frames[0], path.start),
                                ("eval(1) vs end", frames[-1], path.end)):
        gap = metric.hausdorff(frame, target, tol)
        if gap.value > ENDPOINT_TOL + gap.err:
            report.failures.append(CaseFailure(0, seed, name, gap.value,
                                               ENDPOINT_TOL + gap.err))
    case = 0
    for i in range(grid):
        for j in range(i + 1, grid):
            result = metric.hausdorff(frames[i], frames[j], tol)
            bound = (path.lipschitz * (ts[j] - ts[i])
                     + 2.0 * path.eval_err + result.err + tol)
            if result.value > bound:
                report.failures.append(CaseFailure(
                    case, seed,
                    f"modulus at t={ts[i]:.6f}, t={ts[j]:.6f}",
                    result.value, bound))
            case += 1
    report.elapsed = time.perf_counter() - start
    return report


def run_oracle_equivalence(gen: SetGenerator, cases: int = 50,
                           resolution: float = 2e-2,
                           tol: float = DEFAULT_TOL,
                           max_points: int = DEFAULT_POINT_BUDGET) -> SuiteReport:
    """Certified distances against the naive grid oracle.

    Cases whose grids exceed the point budget are skipped and counted.
    """
    start = time.perf_counter()
    report = SuiteReport("oracle", cases)
    draws = gen.sets(2 * cases)
    for case in range(cases):
        A, B = draws[2 * case:2 * case + 2]
        exact = metric.hausdorff(A, B, tol)
        try:
            brute = metric.brute_force_hausdorff(A, B, resolution, max_points)
        except PointBudgetError:
            report.skipped += 1
            continue
        slack = exact.err + brute.err + 1e-12
        if abs(exact.value - brute.value) > slack:
            report.failures.append(CaseFailure(
                case, gen.seed, "certified vs brute-force hausdorff",
                abs(exact.value - brute.value), slack))
    report.elapsed = time.perf_counter() - start
    return report


def run_contraction(dim: int, cases: int = 100, tol: float = DEFAULT_TOL,
                    seed: int = 0, scale: float = 5.0) -> SuiteReport:
    """contraction_gap(a, a2, m, M, t) <= (1 - t) * d(a, a2)."""
    start = time.perf_counter()
    report = SuiteReport("contraction", cases)
    rng = np.random.default_rng(seed)
    for case in range(cases):
        box = canonical_box(rng.uniform(-scale, scale, dim),
                            rng.uniform(-scale, scale, dim))
        while box.lo == box.hi:
            box = canonical_box(rng.uniform(-scale, scale, dim),
                                rng.uniform(-scale, scale, dim))
        a = tuple(rng.uniform(box.lo, box.hi))
        a2 = tuple(rng.uniform(box.lo, box.hi))
        t = float(rng.uniform())
        value = contraction_gap(a, a2, box.lo, box.hi, t)
        bound = (1.0 - t) * math.dist(a, a2) + tol
        if value > bound:
            report.failures.append(CaseFailure(
                case, seed, f"contraction bound at t={t:.6f}", value, bound))
    report.elapsed = time.perf_counter() - start
    return report
