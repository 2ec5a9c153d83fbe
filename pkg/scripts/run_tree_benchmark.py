#!/usr/bin/env python3
"""Run the height-10 tree benchmark and write one CSV per distribution.

Sweeps cache size over both request distributions with the configured
policies and repetitions, then writes ``zipf.csv`` and ``geometric.csv``
under --out-dir.  These files feed the plotting frontend:

    python3 scripts/run_tree_benchmark.py --out-dir results
    cd frontend && npm run plot -- --csv ../results/zipf.csv \\
        --csv ../results/geometric.csv --out ../results/costs.svg
"""

from __future__ import annotations

import argparse
import pathlib
import sys
import time

from depcache import ExperimentConfig, run_experiment, write_csv


def build_config(args: argparse.Namespace, dist: str) -> ExperimentConfig:
    return ExperimentConfig(
        policies=args.policies.split(","),
        ks=args.ks,
        reps=args.reps,
        base_seed=args.seed,
        dag_gen="tree",
        height=args.height,
        trace_gen=dist,
        a=args.a,
        p=args.p,
        length=args.length,
    )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="results")
    parser.add_argument("--policies", default="bucketing_bypass,recursive_lru")
    parser.add_argument("--ks", type=int, nargs="+", default=[16, 32, 64, 128, 256])
    parser.add_argument("--height", type=int, default=10)
    parser.add_argument("--a", type=float, default=4.0, help="Zipf exponent")
    parser.add_argument("--p", type=float, default=10 / 1024, help="geometric success probability")
    parser.add_argument("--length", type=int, default=5000)
    parser.add_argument("--reps", type=int, default=10)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for dist in ("zipf", "geometric"):
        t0 = time.perf_counter()
        rows = run_experiment(build_config(args, dist))
        path = out_dir / f"{dist}.csv"
        write_csv(rows, str(path))
        print(f"wrote {path} ({len(rows)} rows) in {time.perf_counter() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
