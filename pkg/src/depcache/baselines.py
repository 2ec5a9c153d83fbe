"""Classic paging baselines for graphs without dependency edges.

Both baselines refuse graphs with edges (:class:`UnsupportedDag`): they
exist to benchmark the dependency-aware policies in the degenerate case
and to witness the coupling equivalence of the randomized policy.

:class:`RandomMark` is the classic marking algorithm with an eager phase
turn: requests mark their item, the unmarked set is rebuilt from the cache
the moment it empties, and a miss into a full cache evicts a uniformly
random unmarked item using exactly one random draw.  Its event order
mirrors the bucket policy's, so with the same seed the two produce
identical eviction sequences on edge-free graphs.
"""

from __future__ import annotations

from .cache import evict as cache_evict
from .cache import fetch as cache_fetch
from .dag import DependencyDag
from .errors import UnsupportedDag
from .policy import OnlinePolicy, RequestOutcome


def _require_edge_free(dag: DependencyDag, name: str) -> None:
    if dag.edges:
        raise UnsupportedDag(f"{name} only supports graphs without edges")


class ClassicLru(OnlinePolicy):
    name = "lru"

    def __init__(self, dag: DependencyDag, k: int, seed: int = 0, debug_validate: bool = False):
        _require_edge_free(dag, "lru")
        super().__init__(dag, k, seed, debug_validate)
        self.stamps: dict[int, int] = {}
        self._tick = 0

    def serve(self, v: int) -> RequestOutcome:
        self._check_request(v)
        out = RequestOutcome(item=v)
        self.stamps[v] = self._tick
        self._tick += 1
        if v not in self.cache:
            if self.cache.full:
                y = min(self.cache.cached, key=lambda x: self.stamps[x])
                cache_evict(self.cache, self.dag, y)
                out.evicted.append(y)
            cache_fetch(self.cache, self.dag, v)
            out.fetched.append(v)
            out.cost = 1
            self.total_cost += 1
        self._validate()
        self.requests += 1
        return out


class RandomMark(OnlinePolicy):
    name = "random_mark"

    def __init__(self, dag: DependencyDag, k: int, seed: int = 0, debug_validate: bool = False):
        _require_edge_free(dag, "random_mark")
        super().__init__(dag, k, seed, debug_validate)
        self.unmarked: list[int] = []
        self._seen_nonempty = False
        self._phases = 0
        self._started = False

    def _discard(self, v: int) -> None:
        try:
            self.unmarked.remove(v)
        except ValueError:
            pass

    def serve(self, v: int) -> RequestOutcome:
        self._check_request(v)
        if not self._started:
            self._started = True
            self._phases = 1
        out = RequestOutcome(item=v, phase_before=self._phases - 1)
        self._discard(v)  # mark the requested item
        if not self.unmarked:
            if self._seen_nonempty:
                self._phases += 1  # a live unmarked set just emptied
                self._seen_nonempty = False
            self.unmarked = sorted(self.cache.cached)
            if self.unmarked:
                self._seen_nonempty = True
            self._discard(v)
        if v not in self.cache:
            if self.cache.full:
                y = self.unmarked.pop(self.rng.randrange(len(self.unmarked)))
                cache_evict(self.cache, self.dag, y)
                out.evicted.append(y)
            cache_fetch(self.cache, self.dag, v)
            out.fetched.append(v)
            out.cost = 1
            self.total_cost += 1
        self._validate()
        out.phase_after = self._phases - 1
        self.requests += 1
        return out

    @property
    def phase_count(self) -> int:
        return self._phases
