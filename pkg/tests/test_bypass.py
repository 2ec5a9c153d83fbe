"""Bucket eviction with bypassing: threshold, branch behavior, bounds."""

from __future__ import annotations

import math

import pytest
from conftest import dag_k_trace, run_policy
from hypothesis import given

import depcache as dc


# --- threshold ------------------------------------------------------------


def test_threshold_trivial_case():
    assert dc.threshold(1, 1) == 1.0


def test_threshold_small_case():
    # sqrt(4 / H_4) = sqrt(48 / 25)
    assert math.isclose(dc.threshold(4, 4), math.sqrt(48 / 25), rel_tol=0, abs_tol=1e-12)
    assert math.isclose(dc.threshold(4, 4), 1.3856406460551018, rel_tol=0, abs_tol=1e-12)


def test_threshold_hundred():
    # sqrt(100 / H_100)
    assert math.isclose(dc.threshold(100, 250), 4.390622233510417, rel_tol=0, abs_tol=1e-12)


def test_threshold_uses_smaller_of_capacity_and_antichain():
    assert dc.threshold(100, 3) == math.sqrt(100 / dc.harmonic(3))
    assert dc.threshold(3, 100) == math.sqrt(3 / dc.harmonic(3))


def test_threshold_guards():
    with pytest.raises(dc.InvalidCapacity):
        dc.threshold(0, 1)
    with pytest.raises(dc.InvalidCapacity):
        dc.threshold(1, 0)


def test_policy_computes_threshold_from_its_graph(chain3):
    policy = dc.BucketingBypass(chain3, 2, seed=0)
    assert policy.antichain == 1
    assert policy.theta == dc.threshold(2, 1)


# --- the three-item chain walk -------------------------------------------


def test_chain_walk_fetches_bottom_up(chain3):
    policy = dc.BucketingBypass(chain3, 3, seed=0, debug_validate=True)
    walk = [policy.serve(2) for _ in range(3)]
    assert [o.fetched for o in walk] == [[0], [1], [2]]
    assert [o.cost for o in walk] == [2, 2, 1]
    assert [o.action for o in walk] == [
        "fetched-and-bypassed",
        "fetched-and-bypassed",
        "fetched-and-served",
    ]
    assert [o.bypassed for o in walk] == [True, True, False]
    assert policy.bypass_count == 2
    assert policy.total_cost == 5


def test_cached_request_serves_free_and_clears_buckets(chain3):
    policy = dc.BucketingBypass(chain3, 3, seed=0)
    for _ in range(3):
        policy.serve(2)
    out = policy.serve(2)
    assert out.action == "served-from-cache"
    assert out.cost == 0
    assert out.fetched == []
    assert not (set(chain3.descendants(2)) & policy.pool.union())


def test_oversized_closure_still_rejected(chain3):
    policy = dc.BucketingBypass(chain3, 2, seed=0)
    with pytest.raises(dc.RequestTooLarge):
        policy.serve(2)


# --- the shrink branch ----------------------------------------------------


def shrink_scenario():
    """A replayed run whose seventh request triggers the shrink branch.

    Height-4 tree, k=9, seed=2.  Six deep requests warm the cache to
    {0..5} and leave buckets holding {1, 3, 4}; requesting item 9 then
    finds w=9 with T(9) = {0, 1, 4, 9}, so 2 = |{1, 4}| of its items sit
    in buckets, exceeding theta = sqrt(9 / H_8) ~ 1.8197.
    """
    dag = dc.gen_balanced_tree(4)
    policy = dc.BucketingBypass(dag, 9, seed=2, debug_validate=True)
    for v in [10, 9, 11, 9, 8, 11]:
        policy.serve(v)
    return dag, policy


def test_shrink_preconditions_hold():
    dag, policy = shrink_scenario()
    assert math.isclose(policy.theta, 1.819734136044876, rel_tol=0, abs_tol=1e-12)
    assert policy.cache.cached == frozenset(range(6))
    assert policy.pool.union() == {1, 3, 4}


def test_shrink_bypasses_at_unit_cost_without_touching_the_cache():
    dag, policy = shrink_scenario()
    before = policy.total_cost
    out = policy.serve(9)
    assert out.action == "bypassed-with-shrink"
    assert out.bypassed
    assert out.cost == 1
    assert out.fetched == [] and out.evicted == []
    assert policy.total_cost == before + 1
    assert policy.cache.cached == frozenset(range(6))


def test_shrink_removes_ceil_theta_lowest_items():
    dag, policy = shrink_scenario()
    policy.serve(9)
    # the two lowest-tau bucket items of T(9) are gone, the rest remain
    assert policy.pool.union() == {3}
    assert policy.phase_logs[-1].shrink_bypasses == 1
    assert policy.bypass_count == 7


# --- properties -----------------------------------------------------------


@given(dag_k_trace())
def test_costs_reconcile(instance):
    dag, k, trace = instance
    policy = dc.BucketingBypass(dag, k, seed=1, debug_validate=True)
    outcomes = run_policy(policy, trace)
    assert policy.total_cost == sum(o.cost for o in outcomes)
    for o in outcomes:
        assert o.cost in (0, 1, 2)
        assert o.cost == len(o.fetched) + (1 if o.bypassed else 0)


@given(dag_k_trace())
def test_at_most_one_fetch_per_request(instance):
    dag, k, trace = instance
    policy = dc.BucketingBypass(dag, k, seed=2)
    for o in run_policy(policy, trace):
        assert len(o.fetched) <= 1
        assert len(o.evicted) <= 1


@given(dag_k_trace())
def test_served_requests_end_cached_bypassed_ones_need_not(instance):
    dag, k, trace = instance
    policy = dc.BucketingBypass(dag, k, seed=3)
    for v in trace:
        out = policy.serve(v)
        if not out.bypassed:
            assert v in policy.cache


@given(dag_k_trace())
def test_shrink_count_per_phase_is_bounded(instance):
    dag, k, trace = instance
    policy = dc.BucketingBypass(dag, k, seed=4)
    run_policy(policy, trace)
    cap = math.sqrt(k * dc.harmonic(min(k, max(policy.antichain, 1))))
    for phase in policy.phase_logs:
        assert phase.shrink_bypasses <= cap + 1e-9


@given(dag_k_trace())
def test_phase_cost_counts_fetches_and_bypasses(instance):
    dag, k, trace = instance
    policy = dc.BucketingBypass(dag, k, seed=5)
    outcomes = run_policy(policy, trace)
    total_phase_cost = sum(p.cost for p in policy.phase_logs)
    assert total_phase_cost == sum(o.cost for o in outcomes)
