"""Randomized bucket-based eviction policy.

Serving a request v walks its closure T(v) in increasing tau order as a
sequence of pseudo-requests.  Before each pseudo-request the items of T(v)
are removed from all buckets and frozen buckets are dropped; if the pool
is empty it is regenerated from the maximal cached items.  Fetching into a
full cache evicts the highest-tau item of a uniformly random live bucket
(one random draw per eviction).

Phases span one pool generation: a phase ends when a pool that has held
buckets empties, and the next regeneration opens the new phase.  Within a
phase each fetch is tagged clean (item absent from the phase-start cache)
or stale, stale fetches are attributed to the bucket whose random choice
most recently evicted the item, and fragment-level counters are kept
between freeze events.
"""

from __future__ import annotations

from .buckets import BucketPool, max_tau_item, pick_uniform, remove_items, reset_buckets
from .cache import evict as cache_evict
from .cache import fetch as cache_fetch
from .dag import DependencyDag
from .policy import CLEAN, STALE, OnlinePolicy, PhaseLog, RequestOutcome


class Bucketing(OnlinePolicy):
    name = "bucketing"

    def __init__(self, dag: DependencyDag, k: int, seed: int = 0, debug_validate: bool = False):
        super().__init__(dag, k, seed, debug_validate)
        self.pool = BucketPool()  # empty cache -> empty pool; first reset is lazy
        self.phase_logs: list[PhaseLog] = []
        self._phase: PhaseLog | None = None
        self._pool_seen_nonempty = False
        self._evicted_by: dict[int, int] = {}

    # --- phase bookkeeping ----------------------------------------------

    def _open_phase(self) -> None:
        self._phase = PhaseLog(index=len(self.phase_logs), snapshot=frozenset(self.cache.cached))
        self.phase_logs.append(self._phase)
        self._pool_seen_nonempty = False
        self._evicted_by = {}

    def _frag(self) -> int:
        return self.pool.frozen_this_phase

    def _reset_pool(self) -> None:
        self.pool = reset_buckets(self.cache, self.dag)
        if self.pool:
            self._pool_seen_nonempty = True
            assert self._phase is not None
            self._phase.m = len(self.pool)

    def _remove(self, items: set[int]) -> None:
        before = len(self.pool.freeze_order)
        remove_items(self.pool, self.cache, self.dag, items)
        assert self._phase is not None
        self._phase.freeze_order.extend(self.pool.freeze_order[before:])

    def _maybe_turn_phase(self, tv_set: set[int]) -> None:
        """The in-loop pool check: on emptiness, regenerate (new phase if
        the pool had been live) and re-remove the request's closure."""
        if not self.pool:
            if self._pool_seen_nonempty:
                assert self._phase is not None
                self._phase.complete = True
                self._open_phase()
            self._reset_pool()
            self._remove(tv_set)

    # --- request handling -----------------------------------------------

    def _evict_and_fetch(self, w: int, out: RequestOutcome) -> None:
        if w in self.cache:
            return
        phase = self._phase
        assert phase is not None
        if self.cache.full:
            b = pick_uniform(self.pool, self.rng)
            y = max_tau_item(b, self.dag)
            self._evicted_by[y] = b.bucket_id
            self._remove({y})  # freeze check runs before the cache shrinks
            cache_evict(self.cache, self.dag, y)
            f = self._frag()
            phase.evictions += 1
            phase.frag_evictions[f] = phase.frag_evictions.get(f, 0) + 1
            out.evicted.append(y)
        cache_fetch(self.cache, self.dag, w)
        f = self._frag()
        if w in phase.snapshot:
            tag = STALE
            phase.stale += 1
            phase.frag_stale[f] = phase.frag_stale.get(f, 0) + 1
            src = self._evicted_by[w]  # must have been evicted this phase
            phase.stale_by_bucket[src] = phase.stale_by_bucket.get(src, 0) + 1
        else:
            tag = CLEAN
            phase.clean += 1
            phase.frag_clean[f] = phase.frag_clean.get(f, 0) + 1
        phase.cost += 1
        self.total_cost += 1
        out.fetched.append(w)
        out.fetch_tags.append(tag)

    def serve(self, v: int) -> RequestOutcome:
        self._check_request(v)
        if self._phase is None:
            self._open_phase()
        assert self._phase is not None
        out = RequestOutcome(item=v, phase_before=self._phase.index)
        tv = self.dag.closure_sorted(v)
        tv_set = set(tv)
        for w in tv:
            self._remove(tv_set)
            self._maybe_turn_phase(tv_set)
            self._evict_and_fetch(w, out)
            self._validate()
        out.cost = len(out.fetched)
        out.phase_after = self._phase.index
        self.requests += 1
        return out

    # --- aggregate stats ------------------------------------------------

    @property
    def phase_count(self) -> int:
        return len(self.phase_logs)

    @property
    def clean_fetches(self) -> int:
        return sum(p.clean for p in self.phase_logs)

    @property
    def stale_fetches(self) -> int:
        return sum(p.stale for p in self.phase_logs)
