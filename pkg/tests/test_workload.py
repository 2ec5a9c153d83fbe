"""Workload generators: tree shapes, trace distributions, adversarial instance."""

from __future__ import annotations

import math
import random

import pytest

import depcache as dc
from depcache.workload import TOWARD_LEAVES, TOWARD_ROOT


# --- balanced tree --------------------------------------------------------


def test_tree_sizes():
    for h in (1, 2, 3, 5):
        assert dc.gen_balanced_tree(h).n == 2**h - 1


def test_tree_toward_root_closure_is_the_path():
    dag = dc.gen_balanced_tree(3)
    # node 5 sits at depth 3 under 2 under 0
    assert dag.closure_sorted(5) == (0, 2, 5)
    assert dag.closure_size(0) == 1


def test_tree_toward_leaves_closure_is_the_subtree():
    dag = dc.gen_balanced_tree(3, orientation=TOWARD_LEAVES)
    assert set(dag.closure_sorted(0)) == set(range(7))
    assert dag.closure_size(5) == 1


def test_tree_guards():
    with pytest.raises(dc.InvalidHeight):
        dc.gen_balanced_tree(0)
    with pytest.raises(dc.InvalidParameters):
        dc.gen_balanced_tree(3, orientation="sideways")


# --- zipf-like trace ------------------------------------------------------


def test_zipf_guards():
    with pytest.raises(dc.InvalidParameters):
        dc.gen_zipf_trace(h=3, a=1.0, length=10, k=4, seed=0)
    with pytest.raises(dc.InvalidParameters):
        dc.gen_zipf_trace(h=3, a=2.0, length=-1, k=4, seed=0)


def test_zipf_respects_capacity():
    trace = dc.gen_zipf_trace(h=4, a=2.0, length=300, k=2, seed=1)
    dag = dc.gen_balanced_tree(4)
    assert len(trace) == 300
    assert all(dag.closure_size(v) <= 2 for v in trace.items)


def test_zipf_is_deterministic_in_the_seed():
    a = dc.gen_zipf_trace(h=4, a=1.5, length=100, k=4, seed=9)
    b = dc.gen_zipf_trace(h=4, a=1.5, length=100, k=4, seed=9)
    c = dc.gen_zipf_trace(h=4, a=1.5, length=100, k=4, seed=10)
    assert a.items == b.items
    assert a.items != c.items


def _level(node: int) -> int:
    return (node + 1).bit_length()


def test_zipf_level_frequencies_match_the_weights():
    h, a, length = 3, 2.0, 40_000
    trace = dc.gen_zipf_trace(h=h, a=a, length=length, k=h, seed=3)
    weights = [(h - i + 1) ** -a for i in range(1, h + 1)]
    total = sum(weights)
    counts = [0] * (h + 1)
    for v in trace.items:
        counts[_level(v)] += 1
    for i in range(1, h + 1):
        p = weights[i - 1] / total
        sigma = math.sqrt(length * p * (1 - p))
        assert abs(counts[i] - length * p) < 3 * sigma + 1


def test_zipf_per_level_mass_tilts_toward_the_root():
    h, a, length = 3, 2.0, 40_000
    trace = dc.gen_zipf_trace(h=h, a=a, length=length, k=h, seed=3, per_level_mass=True)
    weights = [(h - i + 1) ** -a / 2 ** (i - 1) for i in range(1, h + 1)]
    total = sum(weights)
    counts = [0] * (h + 1)
    for v in trace.items:
        counts[_level(v)] += 1
    for i in range(1, h + 1):
        p = weights[i - 1] / total
        sigma = math.sqrt(length * p * (1 - p))
        assert abs(counts[i] - length * p) < 3 * sigma + 1


def test_unreachable_capacity_fails_fast():
    with pytest.raises(dc.AllItemsPruned):
        dc.gen_zipf_trace(h=3, a=2.0, length=10, k=0, seed=0)
    with pytest.raises(dc.AllItemsPruned):
        dc.gen_geometric_trace(h=3, p=0.5, length=10, k=0, seed=0)


# --- geometric trace ------------------------------------------------------


def test_geometric_guards():
    for p in (0.0, 1.0, -0.5):
        with pytest.raises(dc.InvalidParameters):
            dc.gen_geometric_trace(h=3, p=p, length=10, k=4, seed=0)


def test_geometric_id_frequencies_match_the_weights():
    h, p, length = 3, 0.5, 40_000
    trace = dc.gen_geometric_trace(h=h, p=p, length=length, k=h, seed=4)
    n = 2**h - 1
    weights = [(1 - p) ** i * p for i in range(n)]
    total = sum(weights)
    counts = [0] * n
    for v in trace.items:
        counts[v] += 1
    for v in range(n):
        q = weights[v] / total
        sigma = math.sqrt(length * q * (1 - q))
        assert abs(counts[v] - length * q) < 3 * sigma + 3


def test_geometric_respects_capacity():
    dag = dc.gen_balanced_tree(4)
    trace = dc.gen_geometric_trace(h=4, p=0.3, length=500, k=3, seed=5)
    assert all(dag.closure_size(v) <= 3 for v in trace.items)


# --- adversarial instance -------------------------------------------------


def test_lower_bound_instance_shape():
    dag, designated = dc.gen_lower_bound_instance(8, 4)
    assert dag.n == 9
    assert designated == [0, 1, 2, 8]
    # isolated items have singleton closures; the chain head needs it all
    for v in range(3):
        assert dag.closure_size(v) == 1
    assert dag.closure_sorted(8) == (3, 4, 5, 6, 7, 8)
    assert dag.max_antichain_size() == 4


def test_lower_bound_instance_guards():
    for k, l in ((4, 4), (4, 0), (3, 5)):
        with pytest.raises(dc.InvalidParameters):
            dc.gen_lower_bound_instance(k, l)


def test_lower_bound_trace_block_structure():
    k, l, phases = 8, 4, 50
    _, designated = dc.gen_lower_bound_instance(k, l)
    trace = dc.gen_lower_bound_trace(k, l, phases, seed=6)
    block = k - l + 2
    assert len(trace) == phases * block
    others = sorted(set(range(k + 1)) - set(designated))
    openers = []
    for b in range(phases):
        chunk = trace.items[b * block : (b + 1) * block]
        openers.append(chunk[0])
        assert chunk[0] in designated
        assert chunk[1:] == others
    assert all(x != y for x, y in zip(openers, openers[1:]))
    # every designated item eventually opens some block
    assert set(openers) == set(designated)


def test_lower_bound_trace_guards():
    with pytest.raises(dc.InvalidParameters):
        dc.gen_lower_bound_trace(8, 1, 10, seed=0)
    with pytest.raises(dc.InvalidParameters):
        dc.gen_lower_bound_trace(8, 4, 0, seed=0)


# --- random instances -----------------------------------------------------


def test_random_dag_is_valid_and_bounded():
    rng = random.Random(12)
    for _ in range(50):
        dag = dc.random_dag(rng, 8)
        assert 1 <= dag.n <= 8
        assert all(u > v for u, v in dag.edges)


def test_random_trace_only_emits_admissible_items(chain3):
    rng = random.Random(13)
    items = dc.random_trace(rng, chain3, 2, 50)
    assert len(items) == 50
    assert all(chain3.closure_size(v) <= 2 for v in items)
    with pytest.raises(dc.AllItemsPruned):
        dc.random_trace(rng, chain3, 0, 5)


# --- trace files ----------------------------------------------------------


def test_trace_round_trip(tmp_path):
    trace = dc.gen_zipf_trace(h=3, a=2.0, length=40, k=3, seed=7)
    path = tmp_path / "trace.txt"
    dc.save_trace(trace, str(path))
    loaded = dc.load_trace(str(path))
    assert loaded.items == trace.items
    assert loaded.meta["generator"] == "zipf"
    assert loaded.meta["requests"] == "40"


def test_trace_loader_skips_blanks_and_comments(tmp_path):
    path = tmp_path / "trace.txt"
    path.write_text("# generator=manual\n\n3\n1\n\n# trailing note\n2\n")
    loaded = dc.load_trace(str(path))
    assert loaded.items == [3, 1, 2]
    assert loaded.meta["generator"] == "manual"
