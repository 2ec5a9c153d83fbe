"""Exact offline optimum for dependency-constrained caching.

The optimum is computed by dynamic programming over feasible cache
configurations (dependency-closed item sets of size at most k, encoded as
bit masks).  Serving request t from configuration Q requires T(sigma_t)
inside Q; moving from Q' to Q costs |Q \\ Q'| fetches (evictions are
free).  The bypassing variant may instead pay 1 to skip a request, still
reconfiguring if it wishes.  Both start from an empty cache.

``naive_opt_cost`` and ``naive_opt_cost_bypass`` are deliberately
independent re-implementations -- depth-first searches over lazy schedules
with explicit eviction choices -- used to cross-check the DP on small
instances.
"""

from __future__ import annotations

import numpy as np

from .dag import DependencyDag
from .errors import InvalidCapacity, RequestTooLarge, StateSpaceTooLarge

_MAX_ITEMS = 24
_DEFAULT_BUDGET = 2_000_000
_NAIVE_MAX_ITEMS = 12
_NAIVE_MAX_TRACE = 8


def enumerate_feasible(dag: DependencyDag, k: int, budget: int = _DEFAULT_BUDGET) -> list[int]:
    """All dependency-closed item sets of size <= k, as sorted bit masks.

    Sets are grown in tau order (an item may join once its dependencies
    are in), which generates each closed set exactly once.
    """
    if k < 1:
        raise InvalidCapacity(f"capacity must be positive, got {k}")
    if dag.n > _MAX_ITEMS:
        raise StateSpaceTooLarge(f"config enumeration limited to n <= {_MAX_ITEMS}, got {dag.n}")
    order = dag.tau.order
    dep_masks = [0] * dag.n
    for x in range(dag.n):
        for d in dag.deps[x]:
            dep_masks[x] |= 1 << d
    configs: list[int] = []

    def extend(pos: int, mask: int, size: int) -> None:
        if len(configs) >= budget:
            raise StateSpaceTooLarge(f"more than {budget} feasible configurations")
        configs.append(mask)
        if size == k:
            return
        for p in range(pos, dag.n):
            x = order[p]
            if dep_masks[x] & ~mask == 0:
                extend(p + 1, mask | (1 << x), size + 1)

    extend(0, 0, 0)
    configs.sort()
    return configs


def _closure_masks(dag: DependencyDag, k: int, trace: list[int]) -> list[int]:
    masks = []
    for v in trace:
        tv = dag.descendants(v)
        if len(tv) > k:
            raise RequestTooLarge(f"closure of {v} has {len(tv)} items, cache holds {k}")
        m = 0
        for x in tv:
            m |= 1 << x
        masks.append(m)
    return masks


def _transition_min(prev_cost: np.ndarray, prev: np.ndarray, cur: np.ndarray) -> np.ndarray:
    """min over Q' of prev_cost[Q'] + |Q \\ Q'|, for each Q in cur."""
    out = np.empty(len(cur), dtype=np.int64)
    chunk = max(1, 4_000_000 // max(1, len(prev)))
    for lo in range(0, len(cur), chunk):
        hi = min(lo + chunk, len(cur))
        gained = np.bitwise_count(cur[lo:hi, None] & ~prev[None, :]).astype(np.int64)
        out[lo:hi] = (gained + prev_cost[None, :]).min(axis=1)
    return out


def opt_cost(dag: DependencyDag, k: int, trace: list[int], budget: int = _DEFAULT_BUDGET) -> int:
    """Minimum total fetches to serve every request, starting empty."""
    need = _closure_masks(dag, k, trace)
    if not trace:
        return 0
    family = np.array(enumerate_feasible(dag, k, budget), dtype=np.uint32)
    prev = np.array([0], dtype=np.uint32)  # empty initial cache
    prev_cost = np.array([0], dtype=np.int64)
    for m in need:
        cur = family[(family & np.uint32(m)) == np.uint32(m)]
        prev_cost = _transition_min(prev_cost, prev, cur)
        prev = cur
    return int(prev_cost.min())


def opt_cost_bypass(dag: DependencyDag, k: int, trace: list[int], budget: int = _DEFAULT_BUDGET) -> int:
    """Minimum cost when any request may instead be bypassed for 1."""
    need = _closure_masks(dag, k, trace)
    if not trace:
        return 0
    family = np.array(enumerate_feasible(dag, k, budget), dtype=np.uint32)
    prev = np.array([0], dtype=np.uint32)
    prev_cost = np.array([0], dtype=np.int64)
    for m in need:
        penalty = ((family & np.uint32(m)) != np.uint32(m)).astype(np.int64)
        prev_cost = _transition_min(prev_cost, prev, family) + penalty
        prev = family
    return int(prev_cost.min())


# --- independent naive searches ----------------------------------------


def _naive_guard(dag: DependencyDag, trace: list[int]) -> None:
    if dag.n > _NAIVE_MAX_ITEMS or len(trace) > _NAIVE_MAX_TRACE:
        raise StateSpaceTooLarge(
            f"naive search limited to n <= {_NAIVE_MAX_ITEMS}, |trace| <= {_NAIVE_MAX_TRACE}"
        )


def _victims(dag: DependencyDag, cached: frozenset[int], protected: set[int]) -> list[int]:
    return [
        y
        for y in cached
        if y not in protected and all(p not in cached for p in dag.parents[y])
    ]


def naive_opt_cost(dag: DependencyDag, k: int, trace: list[int]) -> int:
    """Exhaustive search over lazy schedules: fetch T(sigma_t) on demand in
    tau order, branch over every admissible eviction choice."""
    _naive_guard(dag, trace)
    _closure_masks(dag, k, trace)  # validates request sizes
    best = [float("inf")]

    def serve_from(t: int, cached: frozenset[int], cost: int) -> None:
        if cost >= best[0]:
            return
        if t == len(trace):
            best[0] = cost
            return
        tv = dag.closure_sorted(trace[t])
        protected = set(tv)
        need = [w for w in tv if w not in cached]

        def place(i: int, cur: frozenset[int], c: int) -> None:
            if c >= best[0]:
                return
            if i == len(need):
                serve_from(t + 1, cur, c)
                return
            w = need[i]
            if len(cur) < k:
                place(i + 1, cur | {w}, c + 1)
            else:
                for y in _victims(dag, cur, protected):
                    place(i + 1, (cur - {y}) | {w}, c + 1)

        place(0, cached, cost)

    serve_from(0, frozenset(), 0)
    return int(best[0])


def naive_opt_cost_bypass(dag: DependencyDag, k: int, trace: list[int]) -> int:
    """Like :func:`naive_opt_cost` but each request may also be bypassed
    for unit cost with the cache left untouched."""
    _naive_guard(dag, trace)
    _closure_masks(dag, k, trace)
    best = [float("inf")]

    def serve_from(t: int, cached: frozenset[int], cost: int) -> None:
        if cost >= best[0]:
            return
        if t == len(trace):
            best[0] = cost
            return
        tv = dag.closure_sorted(trace[t])
        protected = set(tv)
        need = [w for w in tv if w not in cached]

        def place(i: int, cur: frozenset[int], c: int) -> None:
            if c >= best[0]:
                return
            if i == len(need):
                serve_from(t + 1, cur, c)
                return
            w = need[i]
            if len(cur) < k:
                place(i + 1, cur | {w}, c + 1)
            else:
                for y in _victims(dag, cur, protected):
                    place(i + 1, (cur - {y}) | {w}, c + 1)

        place(0, cached, cost)  # serve branch (free when already cached)
        if need:
            serve_from(t + 1, cached, cost + 1)  # bypass branch

    serve_from(0, frozenset(), 0)
    return int(best[0])
