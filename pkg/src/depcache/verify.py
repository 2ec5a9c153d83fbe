"""Statistical and exactness verification suites.

Each suite runs one end-to-end check -- feasibility under random load,
oracle cross-validation, competitive-ratio bounds, the coupled baseline
equivalence, antichain correctness, the adversarial lower-bound window,
and the tree benchmark -- and returns a :class:`SuiteResult` with a
one-line verdict.  The acceptance test suite and the ``verify`` CLI
subcommand both drive these functions.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

from .bucketing import Bucketing
from .bypass import BucketingBypass
from .dag import build_dag, harmonic, max_antichain_bruteforce, max_antichain_size
from .harness import ExperimentConfig, rows_to_csv, run_experiment
from .opt_oracle import (
    naive_opt_cost,
    naive_opt_cost_bypass,
    opt_cost,
    opt_cost_bypass,
)
from .policy import make_policy
from .recursive_lru import RecursiveLru
from .workload import (
    gen_lower_bound_instance,
    gen_lower_bound_trace,
    random_dag,
    random_trace,
)


@dataclass
class SuiteResult:
    name: str
    ok: bool
    detail: str
    elapsed: float

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.detail} [{self.elapsed:.1f}s]"


def _result(name: str, ok: bool, detail: str, start: float) -> SuiteResult:
    return SuiteResult(name=name, ok=ok, detail=detail, elapsed=time.perf_counter() - start)


# --- suite 1: feasibility under random load ------------------------------


def check_feasibility(runs: int = 10_000, seed: int = 0) -> SuiteResult:
    """Random instances, all three policies, full invariant re-check after
    every pseudo-request (the policies run with debug validation on)."""
    start = time.perf_counter()
    rng = random.Random(seed)
    algs = ("bucketing", "bucketing_bypass", "recursive_lru")
    violations = 0
    done = 0
    while done < runs:
        dag = random_dag(rng, 20)
        k = rng.randint(1, 10)
        trace = random_trace(rng, dag, k, rng.randint(0, 200))
        name = algs[done % 3]
        policy = make_policy(name, dag, k, rng.randrange(2**30), debug_validate=True)
        try:
            for v in trace:
                policy.serve(v)
        except AssertionError:
            violations += 1
        done += 1
    ok = violations == 0
    return _result(
        "feasibility", ok,
        f"{runs} randomized runs, {violations} invariant violations", start,
    )


# --- suite 2: oracle vs naive search -------------------------------------


def check_oracles(instances: int = 500, seed: int = 0) -> SuiteResult:
    start = time.perf_counter()
    rng = random.Random(seed)
    mismatches = 0
    for _ in range(instances):
        dag = random_dag(rng, 8)
        k = rng.randint(1, 4)
        trace = random_trace(rng, dag, k, rng.randint(0, 6))
        a, b = opt_cost(dag, k, trace), naive_opt_cost(dag, k, trace)
        c, d = opt_cost_bypass(dag, k, trace), naive_opt_cost_bypass(dag, k, trace)
        if a != b or c != d:
            mismatches += 1
    ok = mismatches == 0
    return _result(
        "oracle-vs-naive", ok,
        f"{instances} instances, {mismatches} disagreements", start,
    )


# --- suite 3: deterministic policy within k times optimum ----------------


def check_det_bound(instances: int = 2_000, seed: int = 0) -> SuiteResult:
    start = time.perf_counter()
    rng = random.Random(seed)
    violations = 0
    for _ in range(instances):
        dag = random_dag(rng, 10)
        k = rng.randint(1, 5)
        trace = random_trace(rng, dag, k, rng.randint(1, 30))
        policy = RecursiveLru(dag, k, seed=0)
        for v in trace:
            policy.serve(v)
        opt = opt_cost(dag, k, trace)
        if policy.total_cost > k * opt:
            violations += 1
    ok = violations == 0
    return _result(
        "det-k-competitive", ok,
        f"{instances} instances, {violations} exceed k*OPT", start,
    )


# --- suites 4/5: randomized ratio bounds on fixed instances --------------


def _fixed_instances(count: int = 20, trace_len: int = 40):
    """Deterministic pool of small instances for the ratio suites."""
    out = []
    for i in range(count):
        rng = random.Random(1_000 + i)
        dag = random_dag(rng, 12)
        while dag.n < 3:
            dag = random_dag(rng, 12)
        k = rng.randint(2, 6)
        trace = random_trace(rng, dag, k, trace_len)
        out.append((dag, k, trace))
    return out


def check_bucketing_ratio(instances: int = 20, seeds: int = 1_000,
                          slack: float = 0.05, seed: int = 0) -> SuiteResult:
    start = time.perf_counter()
    worst = 0.0
    failures = 0
    for dag, k, trace in _fixed_instances(instances):
        opt = opt_cost(dag, k, trace)
        h = harmonic(min(k, max_antichain_size(dag)))
        bound = 2.0 * h * opt * (1.0 + slack)
        total = 0
        for s in range(seeds):
            policy = Bucketing(dag, k, seed=seed + s)
            for v in trace:
                policy.serve(v)
            total += policy.total_cost
        mean = total / seeds
        worst = max(worst, mean / bound)
        if mean > bound:
            failures += 1
    ok = failures == 0
    return _result(
        "bucketing-ratio", ok,
        f"{instances} instances x {seeds} seeds, {failures} over "
        f"2*H*OPT*(1+{slack}), worst mean/bound {worst:.3f}", start,
    )


def check_bypass_ratio(instances: int = 20, seeds: int = 1_000,
                       slack: float = 0.05, seed: int = 0) -> SuiteResult:
    start = time.perf_counter()
    worst = 0.0
    mean_failures = 0
    shrink_failures = 0
    for dag, k, trace in _fixed_instances(instances):
        opt = opt_cost_bypass(dag, k, trace)
        h = harmonic(min(k, max_antichain_size(dag)))
        per_phase_cap = math.sqrt(k * h)
        bound = 6.0 * per_phase_cap * opt * (1.0 + slack)
        total = 0
        for s in range(seeds):
            policy = BucketingBypass(dag, k, seed=seed + s)
            for v in trace:
                policy.serve(v)
            total += policy.total_cost
            for phase in policy.phase_logs:
                if phase.shrink_bypasses > per_phase_cap + 1e-9:
                    shrink_failures += 1
        mean = total / seeds
        worst = max(worst, mean / bound)
        if mean > bound:
            mean_failures += 1
    ok = mean_failures == 0 and shrink_failures == 0
    return _result(
        "bypass-ratio", ok,
        f"{instances} instances x {seeds} seeds, {mean_failures} over "
        f"6*sqrt(k*H)*OPT*(1+{slack}), worst mean/bound {worst:.3f}, "
        f"{shrink_failures} phases over the sqrt(k*H) shrink cap", start,
    )


# --- suite 6: adversarial lower-bound window -----------------------------


def check_lower_bound_window(seeds: int = 500, phases: int = 200,
                             k: int = 8, l: int = 4, seed: int = 0) -> SuiteResult:
    """Adversarial instance: per-phase cost of the bucket policy, where a
    phase of the request distribution ends once every designated item has
    been requested within it (the offline optimum pays one per phase)."""
    start = time.perf_counter()
    dag, designated = gen_lower_bound_instance(k, l)
    h = harmonic(l)
    lo, hi = 0.8 * h, 2.1 * h
    # Expected phase length is about 1 + (l-1)*H_{l-1} opener blocks; pad so
    # every seed completes at least `phases` phases.
    blocks = math.ceil(phases * (1 + (l - 1) * harmonic(max(l - 1, 1))) * 1.2)
    block_len = k - l + 2  # opener plus every non-designated item
    phase_cost_total = 0
    phase_total = 0
    min_phases = None
    for s in range(seeds):
        trace = gen_lower_bound_trace(k, l, blocks, seed=seed + s)
        policy = Bucketing(dag, k, seed=seed + s)
        completed = 0
        running = 0
        covered: set[int] = set()
        for i, v in enumerate(trace.items):
            running += policy.serve(v).cost
            if i % block_len == 0:  # opener request
                covered.add(v)
                if len(covered) == l:  # phase ends at this request
                    completed += 1
                    phase_cost_total += running
                    running = 0
                    covered = set()
        phase_total += completed
        min_phases = completed if min_phases is None else min(min_phases, completed)
    mean_per_phase = phase_cost_total / phase_total if phase_total else 0.0
    ok = lo <= mean_per_phase <= hi and (min_phases or 0) >= phases
    return _result(
        "lower-bound-window", ok,
        f"mean per-phase cost {mean_per_phase:.4f} vs window "
        f"[{lo:.4f}, {hi:.4f}] over {phase_total} phases across {seeds} seeds "
        f"(min {min_phases}/seed, k={k}, l={l})", start,
    )


# --- suite 7: coupled equivalence with the marking baseline --------------


def check_coupling(traces: int = 1_000, seed: int = 0) -> SuiteResult:
    start = time.perf_counter()
    rng = random.Random(seed)
    divergences = 0
    for _ in range(traces):
        n = rng.randint(1, 30)
        dag = build_dag(n, [])
        k = rng.randint(1, 12)
        trace = random_trace(rng, dag, k, rng.randint(1, 200))
        s = rng.randrange(2**30)
        a = make_policy("bucketing", dag, k, s)
        b = make_policy("random_mark", dag, k, s)
        for v in trace:
            out_a = a.serve(v)
            out_b = b.serve(v)
            if out_a.evicted != out_b.evicted or out_a.fetched != out_b.fetched:
                divergences += 1
                break
        if a.total_cost != b.total_cost or a.cache.cached != b.cache.cached:
            divergences += 1
    ok = divergences == 0
    return _result(
        "random-mark-coupling", ok,
        f"{traces} coupled edge-free traces, {divergences} divergences", start,
    )


# --- suite 8: antichain vs brute force -----------------------------------


def check_antichain(dags: int = 200, seed: int = 0) -> SuiteResult:
    start = time.perf_counter()
    rng = random.Random(seed)
    mismatches = 0
    for _ in range(dags):
        dag = random_dag(rng, 12)
        if max_antichain_size(dag) != max_antichain_bruteforce(dag):
            mismatches += 1
    for n in (1, 2, 5, 9):
        if max_antichain_size(build_dag(n, [])) != n:
            mismatches += 1
        chain = build_dag(n, [(i + 1, i) for i in range(n - 1)])
        if max_antichain_size(chain) != 1:
            mismatches += 1
    ok = mismatches == 0
    return _result(
        "antichain", ok,
        f"{dags} random graphs plus edge-free/chain cases, {mismatches} mismatches",
        start,
    )


# --- suite 9: tree benchmark ---------------------------------------------

TREE_SWEEP = (16, 32, 64, 128, 256)


def _tree_config(dist: str, ks: tuple[int, ...], reps: int, base_seed: int) -> ExperimentConfig:
    config = ExperimentConfig(
        policies=["bucketing_bypass"],
        ks=list(ks),
        reps=reps,
        base_seed=base_seed,
        dag_gen="tree",
        height=10,
        trace_gen=dist,
        length=5_000,
    )
    return config


def _mean_std(values: list[float]) -> tuple[float, float]:
    m = sum(values) / len(values)
    var = sum((v - m) ** 2 for v in values) / len(values)
    return m, math.sqrt(var)


def check_tree_benchmark(reps: int = 10, seed: int = 1,
                         ks: tuple[int, ...] = TREE_SWEEP) -> SuiteResult:
    """Height-10 tree, Zipf and geometric traces, k-sweep: per-config
    runtime under a minute, mean cost per request non-increasing in k on
    average across the sweep (the mean step between consecutive cache
    sizes stays within one pooled standard deviation of zero), and
    byte-stable output."""
    start = time.perf_counter()
    problems: list[str] = []
    for dist in ("zipf", "geometric"):
        per_k: list[list[float]] = []
        for k in ks:
            t0 = time.perf_counter()
            rows = run_experiment(_tree_config(dist, (k,), reps, seed))
            elapsed = time.perf_counter() - t0
            if elapsed >= 60.0:
                problems.append(f"{dist} k={k} took {elapsed:.1f}s")
            per_k.append([r.cost_per_request for r in rows])
        means = [_mean_std(vals) for vals in per_k]
        mean_step = (means[-1][0] - means[0][0]) / (len(ks) - 1)
        pooled = math.sqrt(sum(s * s for _, s in means) / len(means))
        if mean_step > pooled:
            problems.append(
                f"{dist}: mean cost rises on average across the sweep "
                f"({means[0][0]:.4f} at k={ks[0]} to {means[-1][0]:.4f} at "
                f"k={ks[-1]}, mean step {mean_step:+.4f} vs pooled std {pooled:.4f})"
            )
    # byte stability: a fresh run of one configuration reproduces its CSV
    probe = _tree_config("zipf", (ks[0],), reps, seed)
    csv_a = rows_to_csv(run_experiment(probe))
    csv_b = rows_to_csv(run_experiment(probe))
    if csv_a != csv_b:
        problems.append("output not byte-stable across reruns")
    ok = not problems
    detail = "; ".join(problems) if problems else (
        f"{2 * len(ks)} configurations x {reps} reps, mean trend non-increasing "
        f"within pooled std, byte-stable"
    )
    return _result("tree-benchmark", ok, detail, start)


SUITES = {
    "feasibility": check_feasibility,
    "oracle": check_oracles,
    "det-bound": check_det_bound,
    "bucketing-ratio": check_bucketing_ratio,
    "bypass-ratio": check_bypass_ratio,
    "lower-bound": check_lower_bound_window,
    "coupling": check_coupling,
    "antichain": check_antichain,
    "tree-benchmark": check_tree_benchmark,
}
