"""Feasible cache state and its primitive operations.

A cache holds at most k items and must stay closed under dependencies:
whenever an item is cached, all of its dependencies are cached too.  The
two mutations -- fetch and evict -- enforce this locally, so a state built
only through them stays feasible; :func:`check_invariants` re-verifies the
whole state from scratch for tests and debug runs.
"""

from __future__ import annotations

from .dag import DependencyDag
from .errors import (
    AlreadyCached,
    CacheFull,
    InvalidCapacity,
    MissingDependencies,
    NotCached,
    WouldBreakFeasibility,
)


class CacheState:
    """A mutable set of cached items with capacity k."""

    __slots__ = ("k", "cached")

    def __init__(self, k: int, cached: set[int] | None = None):
        if k < 1 or int(k) != k:
            raise InvalidCapacity(f"capacity must be a positive integer, got {k}")
        self.k = int(k)
        self.cached: set[int] = set() if cached is None else set(cached)

    def copy(self) -> "CacheState":
        return CacheState(self.k, self.cached)

    def __contains__(self, x: int) -> bool:
        return x in self.cached

    def __len__(self) -> int:
        return len(self.cached)

    @property
    def full(self) -> bool:
        return len(self.cached) >= self.k

    def __repr__(self) -> str:
        return f"CacheState(k={self.k}, cached={sorted(self.cached)})"


def is_evictable(cache: CacheState, dag: DependencyDag, y: int) -> bool:
    """True when y is cached and no cached item directly depends on it."""
    if y not in cache.cached:
        raise NotCached(f"item {y} is not cached")
    return all(p not in cache.cached for p in dag.parents[y])


def maximal_cached(cache: CacheState, dag: DependencyDag) -> list[int]:
    """Cached items with no cached direct dependent, in increasing id order."""
    return [
        x
        for x in sorted(cache.cached)
        if all(p not in cache.cached for p in dag.parents[x])
    ]


def fetch(cache: CacheState, dag: DependencyDag, x: int) -> None:
    """Add x to the cache; its dependencies must already be present."""
    if x in cache.cached:
        raise AlreadyCached(f"item {x} is already cached")
    missing = [d for d in dag.deps[x] if d not in cache.cached]
    if missing:
        raise MissingDependencies(f"fetching {x} needs uncached dependencies {missing}")
    if len(cache.cached) >= cache.k:
        raise CacheFull(f"cache already holds {cache.k} items")
    cache.cached.add(x)


def evict(cache: CacheState, dag: DependencyDag, y: int) -> None:
    """Remove y from the cache; nothing cached may still depend on it."""
    if y not in cache.cached:
        raise NotCached(f"item {y} is not cached")
    blockers = [p for p in dag.parents[y] if p in cache.cached]
    if blockers:
        raise WouldBreakFeasibility(f"cached items {blockers} still depend on {y}")
    cache.cached.remove(y)


def check_invariants(cache: CacheState, dag: DependencyDag) -> None:
    """Full from-scratch feasibility check (capacity + closure)."""
    assert len(cache.cached) <= cache.k, (
        f"capacity violated: {len(cache.cached)} > {cache.k}"
    )
    for x in cache.cached:
        for d in dag.deps[x]:
            assert d in cache.cached, (
                f"closure violated: {x} cached but its dependency {d} is not"
            )
