"""Shared fixtures and hypothesis strategies for the test suite."""

from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from depcache import DependencyDag, build_dag

settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

# The 11-item worked example used throughout: item ids are 0-based, an edge
# (u, v) means u depends on v, and the numbering coincides with the
# dependencies-first order (rank(i) == i).
REFERENCE_EDGES = [
    (10, 8), (10, 7), (10, 4),
    (9, 7), (9, 6),
    (8, 5),
    (7, 3), (7, 4),
    (6, 2),
    (5, 1), (5, 0),
    (4, 0),
]


@pytest.fixture
def reference_dag() -> DependencyDag:
    return build_dag(11, REFERENCE_EDGES)


@pytest.fixture
def chain3() -> DependencyDag:
    return build_dag(3, [(2, 1), (1, 0)])


@st.composite
def small_dags(draw, max_n: int = 10):
    """A random DAG whose edges point from higher ids to lower ids."""
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(1, n) for v in range(u)]
    if pairs:
        edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    else:
        edges = []
    return build_dag(n, edges)


@st.composite
def dag_k_trace(draw, max_n: int = 10, max_k: int = 8, max_len: int = 40):
    """A random instance: DAG, capacity, and an admissible request trace."""
    dag = draw(small_dags(max_n))
    k = draw(st.integers(1, max_k))
    admissible = [v for v in range(dag.n) if dag.closure_size(v) <= k]
    if admissible:
        trace = draw(st.lists(st.sampled_from(admissible), max_size=max_len))
    else:
        trace = []
    return dag, k, trace


@st.composite
def edge_free_instances(draw, max_n: int = 20, max_k: int = 8, max_len: int = 60):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, max_k))
    trace = draw(st.lists(st.integers(0, n - 1), max_size=max_len))
    return build_dag(n, []), k, trace


def run_policy(policy, items):
    """Serve every request, returning the per-request outcomes."""
    return [policy.serve(v) for v in items]


def shuffled_cases(seed: int, count: int):
    """Deterministic stream of RNGs for loop-style randomized tests."""
    base = random.Random(seed)
    return [random.Random(base.randrange(2**63)) for _ in range(count)]
