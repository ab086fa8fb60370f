"""Command-line front end.

Reports go to stdout (or ``-o``) as JSON, diagnostics to stderr. Exit codes:
0 success, 1 invalid input, 2 budget exceeded, 3 property suite failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import dmetric, ghdist, interpolation, metricspace, propsuite, qidist
from .correspondence import load_correspondence
from .errors import BudgetExceeded
from .search import DEFAULT_CAP, SearchBudget

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_SUITE = 0, 1, 2, 3
MAX_EVALS_ENV = "QIMET_MAX_EVALS"


def _emit(obj, out):
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _max_evals(args, default):
    if args.max_evals is not None:
        return args.max_evals
    env = os.environ.get(MAX_EVALS_ENV)
    return int(env) if env else default


def cmd_gen(args):
    kind = args.kind
    if kind == "lattice":
        space = metricspace.gen_scaled_lattice(args.alpha, args.count)
    elif kind == "polyline":
        space = metricspace.gen_polyline_chain(args.segments, args.samples_per_unit)
    elif kind == "lp_grid":
        p = math.inf if str(args.p).lower() in ("inf", "infinity") else float(args.p)
        space = metricspace.gen_lp_grid(p, args.dim, args.side)
    elif kind == "interp_grid":
        space = metricspace.gen_interpolated_norm_grid(args.t, args.dim, args.side)
    elif kind == "two_point":
        space = metricspace.two_point(args.d)
    else:
        space = propsuite.random_space(args.n, args.seed, args.lo, args.hi, args.slack)
    _emit(space.to_dict(), args.output)
    return EXIT_OK


_SOLVERS = {"gh": ghdist.solve_gh, "qhat": qidist.solve_qhat, "dmetric": dmetric.solve_d}


def cmd_dist(args):
    X = metricspace.load_space(args.space_a, args.tolerance)
    Y = metricspace.load_space(args.space_b, args.tolerance)
    solver = _SOLVERS[args.method]
    if args.search:
        budget = SearchBudget(
            max_evaluations=_max_evals(args, 10_000),
            restarts=args.restarts,
            rng_seed=args.seed,
            initial_temperature=args.temperature,
            cooling_rate=args.cooling,
        )
        res = solver(X, Y, budget, threads=args.threads)
    else:
        res = solver(X, Y, cap=_max_evals(args, DEFAULT_CAP), threads=args.threads)
    report = {
        "method": args.method,
        "mode": "search" if args.search else "exact",
        "value": res.best_value,
        "evaluations": res.evaluations_used,
        "certified_exact": res.certified_exact,
    }
    if args.witness:
        report["witness"] = res.best_witness.to_dict()
        if args.method == "qhat":
            report["witness"]["r"] = res.best_value
    _emit(report, args.output)
    return EXIT_OK


def cmd_path(args):
    X = metricspace.load_space(args.space_a, args.tolerance)
    Y = metricspace.load_space(args.space_b, args.tolerance)
    R = load_correspondence(args.correspondence)
    fam = interpolation.InterpolationFamily(R, X, Y)
    parts, estimates = 1, []
    while parts <= args.partitions:
        estimates.append({"partitions": parts, "length": interpolation.path_length_estimate(fam, parts)})
        parts *= 2
    times = np.linspace(0, 1, args.samples).tolist() if args.samples > 1 else [0.0]
    report = {
        "r": fam.r,
        "bound": interpolation.length_bound(fam.r),
        "estimates": estimates,
        "times": times,
        "samples": [interpolation.sample(fam, t).dist.tolist() for t in times],
    }
    _emit(report, args.output)
    return EXIT_OK


def cmd_verify(args):
    trials = args.families if args.suite == "path" and args.families is not None else args.trials
    rep = propsuite.run_suite(args.suite, trials, args.seed)
    print(f"{rep.suite}: {rep.passed}/{rep.trials} passed, worst slack {rep.worst_slack:.3g}", file=sys.stderr)
    _emit(rep.to_dict(), args.output)
    return EXIT_OK if rep.ok else EXIT_SUITE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qimet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--tolerance", type=float, default=metricspace.DEFAULT_TOLERANCE,
                        help="triangle-inequality tolerance when reading spaces")

    gen = sub.add_parser("gen", parents=[common], help="write an example space as JSON")
    gen.add_argument("kind", choices=["lattice", "polyline", "lp_grid", "interp_grid", "two_point", "random"])
    gen.add_argument("--alpha", type=float, default=1.0)
    gen.add_argument("--count", type=int, default=5)
    gen.add_argument("--segments", type=int, default=3)
    gen.add_argument("--samples-per-unit", type=float, default=0.0)
    gen.add_argument("--p", default="2")
    gen.add_argument("--dim", type=int, default=2)
    gen.add_argument("--side", type=int, default=2)
    gen.add_argument("--t", type=float, default=0.5)
    gen.add_argument("--d", type=float, default=1.0)
    gen.add_argument("--n", type=int, default=4)
    gen.add_argument("--lo", type=float, default=0.5)
    gen.add_argument("--hi", type=float, default=4.0)
    gen.add_argument("--slack", type=float, default=0.0)
    gen.set_defaults(func=cmd_gen)

    dist = sub.add_parser("dist", parents=[common], help="distance between two space files")
    dist.add_argument("space_a")
    dist.add_argument("space_b")
    dist.add_argument("--method", choices=sorted(_SOLVERS), default="gh")
    mode = dist.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--search", action="store_true")
    dist.add_argument("--max-evals", type=int, default=None,
                      help=f"exact: enumeration cap; search: evaluations per restart (env {MAX_EVALS_ENV})")
    dist.add_argument("--restarts", type=int, default=20)
    dist.add_argument("--temperature", type=float, default=1.0)
    dist.add_argument("--cooling", type=float, default=0.999)
    dist.add_argument("--witness", action="store_true", help="include the optimal maps or correspondence")
    dist.set_defaults(func=cmd_dist)

    path = sub.add_parser("path", parents=[common], help="deformation report along a correspondence")
    path.add_argument("space_a")
    path.add_argument("space_b")
    path.add_argument("correspondence")
    path.add_argument("--samples", type=int, default=5)
    path.add_argument("--partitions", type=int, default=1024)
    path.set_defaults(func=cmd_path)

    verify = sub.add_parser("verify", parents=[common], help="run a seeded property suite")
    verify.add_argument("suite", choices=sorted(propsuite.SUITES))
    verify.add_argument("--trials", type=int, default=None)
    verify.add_argument("--families", type=int, default=None)
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; 2 is reserved for budget overruns here
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
