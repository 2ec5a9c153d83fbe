"""Bucket eviction with request bypassing.

Extends the bucket policy for settings where a request may be answered
without caching (at unit cost).  Misses first locate w, the lowest-tau
uncached item of T(v).  If more than ``threshold(k, l)`` items of T(w)
still sit in buckets, the request is bypassed and only the ceil(threshold)
lowest-tau of those items are removed -- shrinking buckets slowly enough
that a phase sees at most sqrt(k * H_min) such bypasses.  Otherwise T(w)
is removed, the pool regenerated if empty, and w fetched (evicting from a
random bucket if full); the request is served if w is v itself, else
bypassed on top of the fetch for a total cost of 2.
"""

from __future__ import annotations

import math

from .bucketing import Bucketing
from .dag import DependencyDag
from .errors import InvalidCapacity
from .policy import RequestOutcome


def threshold(k: int, l: int) -> float:
    """The bypass threshold sqrt(k / H_min(k, l))."""
    if k < 1:
        raise InvalidCapacity(f"capacity must be positive, got {k}")
    if l < 1:
        raise InvalidCapacity(f"antichain size must be positive, got {l}")
    m = min(k, l)
    h = sum(1.0 / i for i in range(1, m + 1))
    return math.sqrt(k / h)


class BucketingBypass(Bucketing):
    name = "bucketing_bypass"

    def __init__(self, dag: DependencyDag, k: int, seed: int = 0, debug_validate: bool = False):
        super().__init__(dag, k, seed, debug_validate)
        self.antichain = dag.max_antichain_size()
        self.theta = threshold(k, self.antichain)
        self._bypasses = 0

    def serve(self, v: int) -> RequestOutcome:
        self._check_request(v)
        if self._phase is None:
            self._open_phase()
        assert self._phase is not None
        out = RequestOutcome(item=v, phase_before=self._phase.index)
        if v in self.cache:
            self._remove(set(self.dag.descendants(v)))
            out.action = "served-from-cache"
        else:
            w = next(x for x in self.dag.closure_sorted(v) if x not in self.cache)
            tw = self.dag.descendants(w)
            in_buckets = tw & self.pool.union()
            if len(in_buckets) > self.theta:
                rank = self.dag.tau.rank
                take = math.ceil(self.theta)
                doomed = set(sorted(in_buckets, key=lambda y: rank[y])[:take])
                self._remove(doomed)
                self._phase.shrink_bypasses += 1
                self._phase.cost += 1
                self.total_cost += 1
                self._bypasses += 1
                out.bypassed = True
                out.cost = 1
                out.action = "bypassed-with-shrink"
            else:
                tw_set = set(tw)
                self._remove(tw_set)
                self._maybe_turn_phase(tw_set)
                self._evict_and_fetch(w, out)
                if w == v:
                    out.cost = 1
                    out.action = "fetched-and-served"
                else:
                    self._phase.cost += 1  # bypass unit on top of the fetch
                    self.total_cost += 1
                    self._bypasses += 1
                    out.bypassed = True
                    out.cost = 2
                    out.action = "fetched-and-bypassed"
        self._validate()
        out.phase_after = self._phase.index
        self.requests += 1
        return out

    @property
    def bypass_count(self) -> int:
        return self._bypasses
