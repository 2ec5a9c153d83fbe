"""Shared plumbing for online caching policies.

Defines the per-request outcome record, the per-phase log kept by the
randomized policies, and the :class:`OnlinePolicy` base class all policies
(randomized, deterministic, and baselines) implement: construct with
``(dag, k, seed)``, then call ``serve(item)`` per request and read
``total_cost``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .cache import CacheState, check_invariants
from .dag import DependencyDag
from .errors import InvalidCapacity, InvalidId, RequestTooLarge

CLEAN = "clean"
STALE = "stale"


@dataclass
class RequestOutcome:
    """What serving one request did.

    ``fetch_tags`` parallels ``fetched`` with clean/stale labels for
    policies that track phases (empty otherwise).  ``cost`` counts fetches
    plus, for the bypassing policy, a unit per bypass.  ``action`` is a
    coarse label; plain policies always use "served".
    """

    item: int
    fetched: list[int] = field(default_factory=list)
    evicted: list[int] = field(default_factory=list)
    fetch_tags: list[str] = field(default_factory=list)
    bypassed: bool = False
    cost: int = 0
    phase_before: int = 0
    phase_after: int = 0
    action: str = "served"


@dataclass
class PhaseLog:
    """Counters for one phase of a randomized policy.

    A phase spans the life of one bucket-pool generation: it ends when a
    previously non-empty pool empties (``complete=True``) or the trace runs
    out.  ``m`` is the bucket count the phase's pool started with.
    Fragment indices count the freezes seen so far when an event is
    recorded, so fragment i sits between the i-th and (i+1)-th freeze.
    """

    index: int
    snapshot: frozenset[int]
    m: int = 0
    clean: int = 0
    stale: int = 0
    evictions: int = 0
    shrink_bypasses: int = 0
    cost: int = 0
    complete: bool = False
    freeze_order: list[int] = field(default_factory=list)
    frag_evictions: dict[int, int] = field(default_factory=dict)
    frag_clean: dict[int, int] = field(default_factory=dict)
    frag_stale: dict[int, int] = field(default_factory=dict)
    stale_by_bucket: dict[int, int] = field(default_factory=dict)


class OnlinePolicy:
    """Base class: a policy driving one cache over one request sequence."""

    name = "abstract"

    def __init__(self, dag: DependencyDag, k: int, seed: int = 0, debug_validate: bool = False):
        if k < 1 or int(k) != k:
            raise InvalidCapacity(f"capacity must be a positive integer, got {k}")
        self.dag = dag
        self.k = int(k)
        self.seed = seed
        self.rng = random.Random(seed)
        self.cache = CacheState(self.k)
        self.total_cost = 0
        self.requests = 0
        self.debug_validate = debug_validate

    def serve(self, v: int) -> RequestOutcome:
        raise NotImplementedError

    def _check_request(self, v: int) -> None:
        if not (0 <= v < self.dag.n):
            raise InvalidId(f"requested item {v} outside 0..{self.dag.n - 1}")
        if self.dag.closure_size(v) > self.k:
            raise RequestTooLarge(
                f"closure of {v} has {self.dag.closure_size(v)} items, cache holds {self.k}"
            )

    def _validate(self) -> None:
        if self.debug_validate:
            check_invariants(self.cache, self.dag)

    # Subclasses with phase structure override these.
    @property
    def phase_count(self) -> int:
        return 0

    @property
    def clean_fetches(self) -> int:
        return 0

    @property
    def stale_fetches(self) -> int:
        return 0

    @property
    def bypass_count(self) -> int:
        return 0


def make_policy(name: str, dag: DependencyDag, k: int, seed: int = 0,
                debug_validate: bool = False) -> OnlinePolicy:
    """Instantiate a policy by its registry name."""
    from .baselines import ClassicLru, RandomMark
    from .bucketing import Bucketing
    from .bypass import BucketingBypass
    from .recursive_lru import RecursiveLru

    registry = {
        "bucketing": Bucketing,
        "bucketing_bypass": BucketingBypass,
        "recursive_lru": RecursiveLru,
        "lru": ClassicLru,
        "random_mark": RandomMark,
    }
    try:
        cls = registry[name]
    except KeyError:
        raise InvalidId(f"unknown policy {name!r}; choose from {sorted(registry)}") from None
    return cls(dag, k, seed, debug_validate=debug_validate)


POLICY_NAMES = ("bucketing", "bucketing_bypass", "recursive_lru", "lru", "random_mark")
