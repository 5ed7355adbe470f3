"""Command-line front end.

Subcommands: dist-h, dist-gh, contract, trace, verify, experiment.  Every
run is a pure function of its command line: outputs are byte-identical on
reruns.  Exit status 2 flags input/parse errors (with the offending
location), 1 flags a theorem-suite failure, 0 everything else; a solver
that ran out of budget still exits 0 with the output flagged bounds-only.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .errors import ExhaustiveLimitError
from .formats import (
    FormatError,
    SpaceObject,
    dumps_doc,
    format_space,
    gh_certificate_doc,
    loads_space,
    parse_metric_space,
    parse_scalar,
)
from .geometry import IntervalUnion, PointSet, Window, scalar_str
from .homotopy import trace as run_trace
from .homotopy import trace_csv
from .solver import EXHAUSTIVE_LIMIT, gh_branch_bound, gh_exact


def _load_space(path: str) -> SpaceObject:
    return loads_space(Path(path).read_text(encoding="utf-8"), location=path)


def _load_metric(path: str):
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(path, f"invalid JSON: {exc}")
    return parse_metric_space(doc, location=path)


def _as_hausdorff_operand(obj: SpaceObject):
    if isinstance(obj, Window):
        return obj.span()
    return obj


def _load_window(path: str) -> Window:
    obj = _load_space(path)
    if not isinstance(obj, Window):
        raise FormatError(path, "expected a window document")
    return obj


def _write_or_print(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_dist_h(args: argparse.Namespace) -> int:
    from .geometry import hausdorff

    a = _as_hausdorff_operand(_load_space(args.a))
    b = _as_hausdorff_operand(_load_space(args.b))
    sys.stdout.write(scalar_str(hausdorff(a, b)) + "\n")
    return 0


def cmd_dist_gh(args: argparse.Namespace) -> int:
    x = _load_metric(args.x)
    y = _load_metric(args.y)
    if args.method == "exact" or (
        args.method == "auto" and x.n * y.n <= args.limit
    ):
        result = gh_exact(x, y, limit=args.limit)
    else:
        result = gh_branch_bound(x, y, budget=args.budget)
    if result.exact is not None:
        sys.stdout.write("status: exact\n")
        sys.stdout.write(f"d_gh: {scalar_str(result.exact)}\n")
    else:
        sys.stdout.write("status: bounds-only (budget exhausted)\n")
    sys.stdout.write(f"lower: {scalar_str(result.lower)}\n")
    sys.stdout.write(f"upper: {scalar_str(result.upper)}\n")
    corr = result.optimal if result.optimal is not None else result.upper_witness
    if corr is not None:
        pairs = " ".join(f"({i},{j})" for i, j in corr.pairs)
        sys.stdout.write(f"correspondence: {pairs}\n")
    sys.stdout.write(f"nodes: {result.nodes_explored}\n")
    if args.certificate is not None:
        doc = gh_certificate_doc(result, x, y)
        Path(args.certificate).write_text(dumps_doc(doc), encoding="utf-8")
        sys.stdout.write(f"certificate: {args.certificate}\n")
    return 0


def cmd_contract(args: argparse.Namespace) -> int:
    from .homotopy import contract

    x = _load_space(args.x)
    if not isinstance(x, PointSet):
        raise FormatError(args.x, "contract expects a points document")
    w = _load_window(args.window)
    lam = parse_scalar(args.lam, "--lam")
    result = contract(x, lam, w)
    _write_or_print(dumps_doc(format_space(result)), args.out)
    return 0


def cmd_trace(args: argparse.Namespace) -> int:
    x = _load_space(args.x)
    if not isinstance(x, PointSet):
        raise FormatError(args.x, "trace expects a points document")
    w = _load_window(args.window)
    grid = [parse_scalar(g, "--grid") for g in args.grid.split(",")]
    tr = run_trace(x, w, grid)
    _write_or_print(trace_csv(tr), args.out)
    return 0


SUITES = {
    "ultrametric-h": (harness.verify_ultrametric_hausdorff, 10_000, True),
    "ultrametric-gh": (harness.verify_ultrametric_gh, 1_000, True),
    "bounded-cloud": (harness.verify_bounded_cloud, 1_000, True),
    "continuity": (harness.verify_continuity, 10_000, True),
    "stability": (harness.verify_stability, 10_000, True),
    "order-lemmas": (harness.verify_order_lemmas, 1_000, True),
    "construction-bounds": (harness.verify_construction_bounds, 500, True),
    "lambda-hits": (harness.lambda_bound_counterexample_search, 10_000, False),
}


def cmd_verify(args: argparse.Namespace) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    cfg = harness.GeneratorConfig(seed=args.seed)
    status = 0
    chunks = []
    for name in names:
        fn, default_cases, theorem_backed = SUITES[name]
        report = fn(cfg, cases=args.cases if args.cases else default_cases)
        chunks.append(report.render())
        if theorem_backed and not report.passed:
            status = 1
    _write_or_print("\n".join(chunks), args.out)
    return status


def cmd_experiment(args: argparse.Namespace) -> int:
    if args.name == "homothety":
        lam = parse_scalar(args.lam, "--lam")
        sizes = [int(s) for s in args.sizes.split(",")]
        table = harness.homothety_experiment(lam, sizes, budget=args.budget)
    else:
        factor = parse_scalar(args.factor, "--factor")
        table = harness.geometric_progression_experiment(
            args.k, factor, budget=args.budget
        )
    _write_or_print(table.render(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netline",
        description="Exact Hausdorff/Gromov-Hausdorff geometry on the line",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist-h", help="exact Hausdorff distance of two sets")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(fn=cmd_dist_h)

    p = sub.add_parser("dist-gh", help="Gromov-Hausdorff distance with certificate")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--method", choices=("auto", "exact", "branch-bound"),
                   default="auto")
    p.add_argument("--limit", type=int, default=EXHAUSTIVE_LIMIT,
                   help="exhaustive feasibility threshold on |X|*|Y|")
    p.add_argument("--budget", type=int, default=None,
                   help="node budget for branch-and-bound")
    p.add_argument("--certificate", default=None,
                   help="write a re-verifiable certificate document here")
    p.set_defaults(fn=cmd_dist_gh)

    p = sub.add_parser("contract", help="deform a point set inside a window")
    p.add_argument("x")
    p.add_argument("--lam", required=True)
    p.add_argument("--window", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_contract)

    p = sub.add_parser("trace", help="deformation trace along a parameter grid")
    p.add_argument("x")
    p.add_argument("--window", required=True)
    p.add_argument("--grid", required=True,
                   help="comma-separated ascending parameters, e.g. 0,1/4,1")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_trace)

    p = sub.add_parser("verify", help="run a randomized certification suite")
    p.add_argument("suite", choices=tuple(SUITES) + ("all",))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("experiment", help="run a trend experiment")
    p.add_argument("name", choices=("homothety", "geometric"))
    p.add_argument("--lam", default="3/2", help="homothety scaling factor")
    p.add_argument("--sizes", default="2,3,4,5,6,7,8",
                   help="homothety grid sizes, comma separated")
    p.add_argument("--factor", default="2", help="geometric progression factor")
    p.add_argument("--k", type=int, default=4, help="largest progression length")
    p.add_argument("--budget", type=int, default=50_000)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FormatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ExhaustiveLimitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
