"""Acceptance suite: one test per criterion, each printing its verdict line.

These run the verification suites at full scale, so the whole file takes
a few minutes.  ``pytest tests/test_acceptance.py -s`` shows the verdict
lines as they complete.
"""

from __future__ import annotations

import shutil
import subprocess
from pathlib import Path

import pytest

from depcache import verify

FRONTEND = Path(__file__).resolve().parents[1] / "frontend"


def _check(result, budget: float | None) -> None:
    print(result.line())
    assert result.ok, result.detail
    if budget is not None:
        assert result.elapsed < budget, f"took {result.elapsed:.1f}s, budget {budget:.0f}s"


def test_01_feasibility_invariants_under_random_load():
    _check(verify.check_feasibility(runs=10_000), budget=60)


def test_02_oracle_matches_naive_exhaustive_search():
    _check(verify.check_oracles(instances=500), budget=120)


def test_03_deterministic_policy_within_k_times_optimal():
    _check(verify.check_det_bound(instances=2_000), budget=120)


def test_04_randomized_policy_mean_cost_bound():
    _check(verify.check_bucketing_ratio(instances=20, seeds=1_000), budget=300)


def test_05_bypassing_policy_mean_cost_and_shrink_cap():
    _check(verify.check_bypass_ratio(instances=20, seeds=1_000), budget=300)


def test_06_adversarial_per_phase_cost_window():
    _check(verify.check_lower_bound_window(seeds=500, phases=200), budget=180)


def test_07_edge_free_coupling_with_marking_baseline():
    _check(verify.check_coupling(traces=1_000), budget=None)


def test_08_antichain_size_matches_brute_force():
    _check(verify.check_antichain(dags=200), budget=None)


def test_09_tree_benchmark_scaling_and_stability():
    _check(verify.check_tree_benchmark(reps=10), budget=None)


def test_10_frontend_plot_fidelity():
    if not (FRONTEND / "package.json").exists():
        pytest.skip("frontend package not built")
    if shutil.which("npx") is None:
        pytest.skip("node toolchain unavailable")
    proc = subprocess.run(
        ["npx", "vitest", "run"],
        cwd=FRONTEND,
        capture_output=True,
        text=True,
        timeout=600,
    )
    tail = "\n".join(proc.stdout.splitlines()[-15:])
    print(f"{'PASS' if proc.returncode == 0 else 'FAIL'} frontend: vitest run\n{tail}")
    assert proc.returncode == 0, proc.stdout + proc.stderr
