"""Graph construction, dependency order, closures, and antichains."""

from __future__ import annotations

import math

import pytest
from conftest import small_dags
from hypothesis import given

import depcache as dc


# --- construction guards -------------------------------------------------


def test_two_cycle_rejected():
    with pytest.raises(dc.CycleDetected):
        dc.build_dag(2, [(0, 1), (1, 0)])


def test_self_loop_rejected():
    with pytest.raises(dc.CycleDetected):
        dc.build_dag(2, [(0, 0)])


def test_long_cycle_rejected():
    with pytest.raises(dc.CycleDetected):
        dc.build_dag(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def test_duplicate_edge_rejected():
    with pytest.raises(dc.DuplicateEdge):
        dc.build_dag(2, [(1, 0), (1, 0)])


def test_out_of_range_endpoint_rejected():
    with pytest.raises(dc.InvalidId):
        dc.build_dag(2, [(0, 5)])
    with pytest.raises(dc.InvalidId):
        dc.build_dag(2, [(-1, 0)])


def test_empty_universe_builds_but_has_no_antichain():
    dag = dc.build_dag(0, [])
    assert dag.n == 0
    with pytest.raises(dc.EmptyUniverse):
        dag.max_antichain_size()


# --- dependency order ----------------------------------------------------


def test_chain_ranks_are_forced(chain3):
    assert chain3.tau.rank == (0, 1, 2)
    assert chain3.tau.order == (0, 1, 2)


def test_reference_numbering_is_already_in_order(reference_dag):
    assert all(reference_dag.tau.rank[i] == i for i in range(11))


def test_ready_items_emitted_smallest_id_first():
    # 1 and 2 have no dependencies; 3 depends on 1.  The order must pick
    # ready items by ascending id: 0, 1, 2, 3.
    dag = dc.build_dag(4, [(3, 1)])
    assert dag.tau.order == (0, 1, 2, 3)


def test_order_prefers_small_ids_even_when_blocked():
    # 0 depends on 2, so 2 must come first despite its larger id.
    dag = dc.build_dag(3, [(0, 2)])
    assert dag.tau.order == (1, 2, 0)


@given(small_dags())
def test_dependencies_always_precede_dependents(dag):
    rank = dag.tau.rank
    for u, v in dag.edges:
        assert rank[v] < rank[u]


@given(small_dags())
def test_order_is_a_permutation(dag):
    assert sorted(dag.tau.order) == list(range(dag.n))
    assert all(dag.tau.order[dag.tau.rank[x]] == x for x in range(dag.n))


# --- closures -------------------------------------------------------------


def test_reference_closures(reference_dag):
    assert sorted(reference_dag.descendants(8)) == [0, 1, 5, 8]
    assert sorted(reference_dag.descendants(10)) == [0, 1, 3, 4, 5, 7, 8, 10]
    assert reference_dag.closure_size(10) == 8


def test_closure_of_a_source_is_itself(reference_dag):
    assert reference_dag.descendants(0) == frozenset({0})


def test_closure_invalid_id(reference_dag):
    with pytest.raises(dc.InvalidId):
        reference_dag.descendants(11)


@given(small_dags())
def test_closure_contains_self_and_is_transitive(dag):
    for x in range(dag.n):
        tx = dag.descendants(x)
        assert x in tx
        for y in tx:
            assert dag.descendants(y) <= tx


@given(small_dags())
def test_closure_sorted_is_increasing_in_rank(dag):
    rank = dag.tau.rank
    for x in range(dag.n):
        ordered = dag.closure_sorted(x)
        assert set(ordered) == set(dag.descendants(x))
        assert all(rank[a] < rank[b] for a, b in zip(ordered, ordered[1:]))


# --- maximum antichain ----------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_edge_free_antichain_is_everything(n):
    assert dc.build_dag(n, []).max_antichain_size() == n


def test_chain_antichain_is_one():
    edges = [(i + 1, i) for i in range(4)]
    assert dc.build_dag(5, edges).max_antichain_size() == 1
    assert dc.max_antichain_bruteforce(dc.build_dag(5, edges)) == 1


def test_reference_antichain_matches_bruteforce(reference_dag):
    assert reference_dag.max_antichain_size() == dc.max_antichain_bruteforce(reference_dag)


@given(small_dags(max_n=12))
def test_antichain_matches_bruteforce(dag):
    assert dag.max_antichain_size() == dc.max_antichain_bruteforce(dag)


def test_bruteforce_size_guard():
    with pytest.raises(dc.TooLarge):
        dc.max_antichain_bruteforce(dc.build_dag(23, []))


# --- harmonic numbers -----------------------------------------------------


def test_harmonic_small_values():
    assert dc.harmonic(1) == 1.0
    assert dc.harmonic(2) == 1.5
    assert math.isclose(dc.harmonic(4), 25 / 12, rel_tol=0, abs_tol=1e-12)


def test_harmonic_hundred():
    assert math.isclose(dc.harmonic(100), 5.187377517639621, rel_tol=0, abs_tol=1e-12)


def test_harmonic_rejects_nonpositive():
    with pytest.raises(dc.InvalidArgument):
        dc.harmonic(0)


# --- file round-trip ------------------------------------------------------


def test_save_load_roundtrip(tmp_path, reference_dag):
    path = tmp_path / "reference.dag"
    dc.save_dag(reference_dag, str(path))
    loaded = dc.load_dag(str(path))
    assert loaded.n == reference_dag.n
    assert sorted(loaded.edges) == sorted(reference_dag.edges)


def test_load_skips_comments(tmp_path):
    path = tmp_path / "tiny.dag"
    path.write_text("# a comment\n3\n# another\n2 0\n1 0\n")
    dag = dc.load_dag(str(path))
    assert dag.n == 3
    assert sorted(dag.edges) == [(1, 0), (2, 0)]
