"""Command line interface.

Subcommands:
  dist    certified distances between two JSON set documents
  path    evaluate a JSON path document into a frame stream (and SVGs)
  verify  run a randomized verification suite

Exit codes: 0 on success, 1 when a verification suite reports failures,
2 for usage, parse or domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import metric, svg, verify
from .geometry import (
    DocumentError,
    GeometryError,
    loads_json,
    set_from_document,
    set_to_document,
)
from .metric import DEFAULT_TOL, PointBudgetError
from .paths import path_from_document

SUITES = ("metric-axioms", "path-modulus", "oracle", "contraction", "all")
_SUITE_DIMS = (1, 2, 3)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperspace",
        description="Compact sets under the Hausdorff metric.")
    sub = parser.add_subparsers(dest="command", required=True)

    dist = sub.add_parser("dist", help="distance between two set documents")
    dist.add_argument("set_a", help="JSON file with the first set")
    dist.add_argument("set_b", help="JSON file with the second set")
    dist.add_argument("--tol", type=float, default=DEFAULT_TOL,
                      help="certified error tolerance (default 1e-9)")
    dist.add_argument("--oracle", type=float, metavar="RESOLUTION",
                      help="also run the brute-force grid oracle")

    path = sub.add_parser("path", help="evaluate a path document")
    path.add_argument("document", help="JSON file with the path description")
    path.add_argument("--frames", type=int, required=True,
                      help="number of frames (>= 2)")
    path.add_argument("--out", required=True,
                      help="output file for the frame stream JSON")
    path.add_argument("--svg", metavar="DIR",
                      help="also write one SVG per frame (dimension 2 only)")

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("suite", choices=SUITES)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--cases", type=int, default=100)
    ver.add_argument("--tol", type=float, default=DEFAULT_TOL)
    return parser


def _load_document(filename: str):
    return loads_json(Path(filename).read_text())


def cmd_dist(args) -> int:
    A = set_from_document(_load_document(args.set_a))
    B = set_from_document(_load_document(args.set_b))
    ab = metric.directed_distance(A, B, args.tol)
    ba = metric.directed_distance(B, A, args.tol)
    out = {"dbar_ab": ab.value, "dbar_ba": ba.value,
           "h": max(ab.value, ba.value), "err": max(ab.err, ba.err)}
    if args.oracle is not None:
        out["oracle"] = metric.brute_force_hausdorff(A, B, args.oracle).as_dict()
    print(json.dumps(out))
    return 0


def cmd_path(args) -> int:
    if args.frames < 2:
        raise DocumentError(f"--frames must be at least 2, got {args.frames}")
    path = path_from_document(_load_document(args.document))
    ts = np.linspace(0.0, 1.0, args.frames)
    frames = [path.eval(t) for t in ts]
    stream = {
        "header": {"dim": path.dim, "kind": path.kind,
                   "lipschitz": path.lipschitz, "frames": args.frames},
        "frames": [{"t": float(t), "set": set_to_document(frame)["set"]}
                   for t, frame in zip(ts, frames)],
    }
    Path(args.out).write_text(json.dumps(stream, indent=2) + "\n")
    if args.svg is not None:
        if path.dim != 2:
            raise GeometryError(
                f"--svg needs a 2D path, got dimension {path.dim}")
        directory = Path(args.svg)
        directory.mkdir(parents=True, exist_ok=True)
        viewbox = svg.shared_viewbox(frames)
        for index, (t, frame) in enumerate(zip(ts, frames)):
            name = directory / f"frame_{index:03d}.svg"
            name.write_text(svg.render_frame(frame, float(t), viewbox) + "\n")
    return 0


def _verify_reports(args) -> list:
    reports = []
    per_dim = max(1, args.cases // len(_SUITE_DIMS))
    if args.suite in ("metric-axioms", "all"):
        reports.append(verify.merge_reports("metric-axioms", [
            verify.run_metric_axioms(
                verify.SetGenerator(dim, seed=args.seed + dim),
                cases=per_dim, tol=args.tol)
            for dim in _SUITE_DIMS]))
    if args.suite in ("path-modulus", "all"):
        reports.append(_modulus_report(args))
    if args.suite in ("oracle", "all"):
        reports.append(verify.merge_reports("oracle", [
            verify.run_oracle_equivalence(
                verify.SetGenerator(dim, seed=args.seed + dim, scale=1.0),
                cases=max(1, args.cases // 8), resolution=2e-2, tol=args.tol)
            for dim in (1, 2)]))
    if args.suite in ("contraction", "all"):
        reports.append(verify.merge_reports("contraction", [
            verify.run_contraction(dim, cases=per_dim, tol=args.tol,
                                   seed=args.seed + dim)
            for dim in _SUITE_DIMS]))
    return reports


def _modulus_report(args) -> verify.SuiteReport:
    from . import paths

    count = max(1, args.cases // 20)
    reports = []
    for dim in _SUITE_DIMS:
        gen = verify.SetGenerator(dim, seed=args.seed + dim, scale=3.0)
        rng = gen.rng()
        for A, B in zip(gen.sets(2 * count)[::2], gen.sets(2 * count)[1::2]):
            vector = tuple(rng.uniform(-gen.scale, gen.scale, dim))
            for p in (paths.translation_path(A, vector),
                      paths.connect(A, B, segment_samples=9)):
                reports.append(verify.run_path_modulus(
                    p, grid=21, tol=args.tol, seed=gen.seed))
    return verify.merge_reports("path-modulus", reports)


def cmd_verify(args) -> int:
    reports = _verify_reports(args)
    payload = [r.as_dict() for r in reports]
    print(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2))
    return 0 if all(r.passed for r in reports) else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"dist": cmd_dist, "path": cmd_path, "verify": cmd_verify}
    try:
        return handlers[args.command](args)
    except (GeometryError, PointBudgetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
