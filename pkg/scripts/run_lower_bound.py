#!/usr/bin/env python3
"""Measure per-phase cost on the adversarial isolated-items-plus-chain instance.

Runs the randomized bucket policy over the adversarial trace for many
seeds, segments the run into phases (a phase ends once every designated
item has been requested within it), and prints the mean per-phase cost
against the H_l prediction.  The offline optimum pays 1 per phase, so the
printed mean is an empirical competitive ratio.
"""

from __future__ import annotations

import argparse
import math
import sys

from depcache import Bucketing, gen_lower_bound_instance, gen_lower_bound_trace, harmonic


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k", type=int, default=8)
    parser.add_argument("--l", type=int, default=4)
    parser.add_argument("--phases", type=int, default=200, help="phases per seed")
    parser.add_argument("--seeds", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0, help="base seed")
    args = parser.parse_args(argv)

    dag, designated = gen_lower_bound_instance(args.k, args.l)
    block_len = args.k - args.l + 2
    blocks = math.ceil(args.phases * (1 + (args.l - 1) * harmonic(max(args.l - 1, 1))) * 1.2)

    total_cost = 0
    total_phases = 0
    for s in range(args.seeds):
        trace = gen_lower_bound_trace(args.k, args.l, blocks, seed=args.seed + s)
        policy = Bucketing(dag, args.k, seed=args.seed + s)
        running = 0
        covered: set[int] = set()
        for i, v in enumerate(trace.items):
            running += policy.serve(v).cost
            if i % block_len == 0:
                covered.add(v)
                if len(covered) == len(designated):
                    total_phases += 1
                    total_cost += running
                    running = 0
                    covered = set()

    mean = total_cost / total_phases if total_phases else float("nan")
    h = harmonic(args.l)
    print(f"instance: k={args.k}, l={args.l}, designated={designated}")
    print(f"completed phases: {total_phases} over {args.seeds} seeds")
    print(f"mean cost per phase: {mean:.4f} (H_{args.l} = {h:.4f}, window [{0.8 * h:.4f}, {2.1 * h:.4f}])")
    return 0


if __name__ == "__main__":
    sys.exit(main())
