"""Command-line interface.

Subcommands: ``gen-dag`` and ``gen-trace`` write instance files, ``run``
executes an experiment (flags or a flat key=value --config file) and
writes CSV, ``opt`` prints the exact offline optimum for an instance, and
``verify`` runs the statistical verification suites.
"""

from __future__ import annotations

import argparse
import sys

from .dag import load_dag, save_dag
from .errors import DepCacheError, InvalidArgument
from .harness import config_from_mapping, parse_config_file, run_experiment, rows_to_csv, write_csv
from .opt_oracle import opt_cost, opt_cost_bypass
from .verify import SUITES
from .workload import (
    TOWARD_LEAVES,
    TOWARD_ROOT,
    gen_balanced_tree,
    gen_geometric_trace,
    gen_lower_bound_instance,
    gen_lower_bound_trace,
    gen_zipf_trace,
    load_trace,
    save_trace,
)

_SUITE_TRIALS_PARAM = {
    "feasibility": "runs",
    "oracle": "instances",
    "det-bound": "instances",
    "bucketing-ratio": "seeds",
    "bypass-ratio": "seeds",
    "lower-bound": "seeds",
    "coupling": "traces",
    "antichain": "dags",
    "tree-benchmark": "reps",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="depcache")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-dag", help="write a dependency graph file")
    p.add_argument("--gen", choices=["tree", "lower-bound"], default="tree")
    p.add_argument("--height", type=int, help="tree height")
    p.add_argument("--orientation", choices=[TOWARD_ROOT, TOWARD_LEAVES], default=TOWARD_ROOT)
    p.add_argument("--k", type=int, help="cache size (lower-bound instance)")
    p.add_argument("--l", type=int, help="antichain size (lower-bound instance)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("gen-trace", help="write a request trace file")
    p.add_argument("--gen", choices=["zipf", "geometric", "lower-bound"], required=True)
    p.add_argument("--height", type=int)
    p.add_argument("--a", type=float, default=4.0)
    p.add_argument("--p", type=float, default=10 / 1024)
    p.add_argument("--length", type=int, default=5000)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int)
    p.add_argument("--phases", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--orientation", choices=[TOWARD_ROOT, TOWARD_LEAVES], default=TOWARD_ROOT)
    p.add_argument("--per-level-mass", action="store_true")
    p.add_argument("--out", required=True)

    p = sub.add_parser("run", help="run policies and emit CSV rows")
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--alg", action="append", help="policy name (repeatable)")
    p.add_argument("--k", action="append", type=int, help="cache size (repeatable)")
    p.add_argument("--dag", help="graph file, 'tree', or 'lower-bound'")
    p.add_argument("--trace", help="trace file, 'zipf', 'geometric', or 'lower-bound'")
    p.add_argument("--height", type=int)
    p.add_argument("--orientation", choices=[TOWARD_ROOT, TOWARD_LEAVES])
    p.add_argument("--length", type=int)
    p.add_argument("--a", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--phases", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--opt", action="store_true", help="attach exact optimum and ratio")
    p.add_argument("--per-level-mass", action="store_true")
    p.add_argument("--csv", help="output CSV path (stdout when omitted)")

    p = sub.add_parser("opt", help="print the exact offline optimum")
    p.add_argument("--dag", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trace", required=True)
    p.add_argument("--bypass", action="store_true")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=sorted(SUITES) + ["ratio-bounds", "all"], default="all")
    p.add_argument("--trials", type=int, help="override the suite's trial count")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_gen_dag(args: argparse.Namespace) -> int:
    if args.gen == "tree":
        if args.height is None:
            raise InvalidArgument("--height is required for tree graphs")
        dag = gen_balanced_tree(args.height, args.orientation)
        save_dag(dag, args.out)
    else:
        if args.k is None or args.l is None:
            raise InvalidArgument("--k and --l are required for lower-bound instances")
        dag, designated = gen_lower_bound_instance(args.k, args.l)
        save_dag(dag, args.out)
        print(f"designated set: {designated}")
    print(f"wrote {args.out}")
    return 0


def _cmd_gen_trace(args: argparse.Namespace) -> int:
    if args.gen == "zipf":
        if args.height is None:
            raise InvalidArgument("--height is required for zipf traces")
        trace = gen_zipf_trace(args.height, args.a, args.length, args.k, args.seed,
                               orientation=args.orientation,
                               per_level_mass=args.per_level_mass)
    elif args.gen == "geometric":
        if args.height is None:
            raise InvalidArgument("--height is required for geometric traces")
        trace = gen_geometric_trace(args.height, args.p, args.length, args.k, args.seed,
                                    orientation=args.orientation)
    else:
        if args.l is None:
            raise InvalidArgument("--l is required for lower-bound traces")
        trace = gen_lower_bound_trace(args.k, args.l, args.phases, args.seed)
    save_trace(trace, args.out)
    print(f"wrote {args.out} ({len(trace.items)} requests)")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    mapping: dict[str, str] = {}
    if args.config:
        mapping.update(parse_config_file(args.config))
    overrides = {
        "policies": ",".join(args.alg) if args.alg else None,
        "k": ",".join(str(k) for k in args.k) if args.k else None,
        "dag": args.dag,
        "trace": args.trace,
        "height": args.height,
        "orientation": args.orientation,
        "length": args.length,
        "a": args.a,
        "p": args.p,
        "phases": args.phases,
        "l": args.l,
        "reps": args.reps,
        "seed": args.seed,
        "csv": args.csv,
    }
    for key, value in overrides.items():
        if value is not None:
            mapping[key] = str(value)
    if args.opt:
        mapping["oracle"] = "true"
    if args.per_level_mass:
        mapping["per_level_mass"] = "true"
    config = config_from_mapping(mapping)
    rows = run_experiment(config)
    text = rows_to_csv(rows)
    if config.csv_path:
        write_csv(rows, config.csv_path)
        print(f"wrote {len(rows)} rows to {config.csv_path}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_opt(args: argparse.Namespace) -> int:
    dag = load_dag(args.dag)
    trace = load_trace(args.trace)
    fn = opt_cost_bypass if args.bypass else opt_cost
    print(fn(dag, args.k, trace.items))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.suite == "all":
        names = sorted(SUITES)
    elif args.suite == "ratio-bounds":
        names = ["bucketing-ratio", "bypass-ratio"]
    else:
        names = [args.suite]
    failed = 0
    for name in names:
        kwargs = {"seed": args.seed}
        if args.trials is not None:
            kwargs[_SUITE_TRIALS_PARAM[name]] = args.trials
        result = SUITES[name](**kwargs)
        print(result.line())
        if not result.ok:
            failed += 1
    return 1 if failed else 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "gen-dag": _cmd_gen_dag,
        "gen-trace": _cmd_gen_trace,
        "run": _cmd_run,
        "opt": _cmd_opt,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except DepCacheError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
