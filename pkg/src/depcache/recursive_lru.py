"""Deterministic dependency-aware LRU.

Serving v first touches every item of T(v) in decreasing tau order with
fresh, strictly increasing timestamps, then fetches the uncached items of
T(v) in increasing tau order.  When the cache is full the victim is the
evictable item with the oldest timestamp; never-touched items carry -inf
and go first, with the lowest id breaking exact ties.  On graphs without
edges this is exactly classic LRU.
"""

from __future__ import annotations

import math

from .cache import evict as cache_evict
from .cache import fetch as cache_fetch
from .dag import DependencyDag
from .policy import OnlinePolicy, RequestOutcome


class RecursiveLru(OnlinePolicy):
    name = "recursive_lru"

    def __init__(self, dag: DependencyDag, k: int, seed: int = 0, debug_validate: bool = False):
        super().__init__(dag, k, seed, debug_validate)
        self.stamps: list[float] = [-math.inf] * dag.n
        self._tick = 0

    def _touch(self, w: int) -> None:
        self.stamps[w] = float(self._tick)
        self._tick += 1

    def _oldest_evictable(self, protected: set[int]) -> int:
        cached = self.cache.cached
        best: int | None = None
        for y in cached:
            if any(p in cached for p in self.dag.parents[y]):
                continue
            if best is None or (self.stamps[y], y) < (self.stamps[best], best):
                best = y
        # A full cache always retains an evictable item outside the freshly
        # touched closure; anything else is an internal error.
        assert best is not None, "no evictable item in a non-empty cache"
        assert best not in protected, f"victim {best} lies inside the active closure"
        return best

    def serve(self, v: int) -> RequestOutcome:
        self._check_request(v)
        out = RequestOutcome(item=v)
        tv = self.dag.closure_sorted(v)
        for w in reversed(tv):
            self._touch(w)
        protected = set(tv)
        for w in tv:
            if w not in self.cache:
                if self.cache.full:
                    y = self._oldest_evictable(protected)
                    cache_evict(self.cache, self.dag, y)
                    out.evicted.append(y)
                cache_fetch(self.cache, self.dag, w)
                out.fetched.append(w)
                self.total_cost += 1
            self._validate()
        out.cost = len(out.fetched)
        self.requests += 1
        return out
