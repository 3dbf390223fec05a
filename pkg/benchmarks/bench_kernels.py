"""Benchmark the compiled kernels against the numpy fallback.

Runs the same certified-supremum and point-batch workloads through both
backends, checks they return bit-identical results, and reports wall times
with the speedup.  Usage:

    python benchmarks/bench_kernels.py [--trials 40] [--dims 1 2 3] [--seed 7]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from hyperspace import _kernels_py as pyk

try:
    from hyperspace import _kernels as ck
except ImportError:
    ck = None

TOL = 1e-9
BUDGET = 4_000_000


def random_case(rng, n):
    """A random convex-piece soup plus a box and a segment domain."""
    nb = int(rng.integers(0, 4))
    ns = int(rng.integers(0, 3))
    npt = int(rng.integers(0, 3))
    if nb + ns + npt == 0:
        npt = 1
    box_lo = rng.uniform(-3, 2, (nb, n))
    box_hi = box_lo + rng.uniform(0.1, 3, (nb, n))
    seg_p = rng.uniform(-3, 3, (ns, n))
    seg_q = rng.uniform(-3, 3, (ns, n))
    pts = rng.uniform(-3, 3, (npt, n))
    lo = rng.uniform(-3, 1, n)
    hi = lo + rng.uniform(0.2, 3, n)
    p = rng.uniform(-3, 3, n)
    q = rng.uniform(-3, 3, n)
    return (box_lo, box_hi, seg_p, seg_q, pts), (lo, hi), (p, q)


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - t0, out


def bench_certified(rng, dims, trials):
    """sup_dist_box and sup_dist_segment over random piece soups."""
    rows = []
    for n in dims:
        tp, tc = [], []
        for _ in range(trials):
            pieces, (lo, hi), (p, q) = random_case(rng, n)
            for fn_py, fn_c, args in (
                ("sup_dist_box", "sup_dist_box", (lo, hi, *pieces)),
                ("sup_dist_segment", "sup_dist_segment", (p, q, *pieces)),
            ):
                dt, got_py = timed(getattr(pyk, fn_py), *args, TOL, BUDGET)
                tp.append(dt)
                if ck is not None:
                    dt, got_c = timed(getattr(ck, fn_c), *args, TOL, BUDGET)
                    tc.append(dt)
                    if got_c != got_py:
                        raise SystemExit(
                            f"backend mismatch on {fn_py} in dim {n}: "
                            f"{got_c} vs {got_py}")
        rows.append((f"certified sup, dim {n}", sum(tp), sum(tc)))
    return rows


def bench_batches(rng, trials):
    """min_dists and maxmin_points on large point batches."""
    n = 3
    pieces, _, _ = random_case(rng, n)
    x = rng.uniform(-3, 3, (50_000, n))
    b = rng.uniform(-3, 3, (2_000, n))
    a = rng.uniform(-3, 3, (5_000, n))
    rows = []
    for label, fn, args in (
        ("min_dists, 50k points", "min_dists", (x, *pieces)),
        ("maxmin, 5k x 2k points", "maxmin_points", (a, b)),
    ):
        tp, tc = [], []
        for _ in range(trials):
            dt, got_py = timed(getattr(pyk, fn), *args)
            tp.append(dt)
            if ck is not None:
                dt, got_c = timed(getattr(ck, fn), *args)
                tc.append(dt)
                same = (np.array_equal(got_c, got_py)
                        if isinstance(got_py, np.ndarray) else got_c == got_py)
                if not same:
                    raise SystemExit(f"backend mismatch on {fn}")
        rows.append((label, statistics.median(tp),
                     statistics.median(tc) if tc else 0.0))
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=40)
    parser.add_argument("--dims", type=int, nargs="+", default=[1, 2, 3])
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args(argv)

    if ck is None:
        print("compiled backend not built; timing the numpy fallback only")
    rng = np.random.default_rng(args.seed)
    rows = bench_certified(rng, args.dims, args.trials)
    rows += bench_batches(rng, min(args.trials, 10))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'numpy':>10}  {'compiled':>10}  speedup")
    for label, t_py, t_c in rows:
        if ck is None:
            print(f"{label:<{width}}  {t_py:>9.4f}s  {'-':>10}")
        else:
            ratio = t_py / t_c if t_c > 0 else float("inf")
            print(f"{label:<{width}}  {t_py:>9.4f}s  {t_c:>9.4f}s  {ratio:6.1f}x")
    if ck is not None:
        print("all workloads returned bit-identical results on both backends")


if __name__ == "__main__":
    main()
