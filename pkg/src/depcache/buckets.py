"""Bucket pool used by the randomized eviction policies.

A bucket is a set of cached items whose highest-tau member is safe to
evict.  The pool is regenerated from the cache ("reset"): one bucket per
maximal cached item x, holding the whole closure T(x).  As requests remove
items, a bucket freezes -- and is dropped -- once it empties or its
highest-tau member gains a cached dependent.  Eviction picks a uniformly
random live bucket and evicts that bucket's highest-tau item.
"""

from __future__ import annotations

import random

from .cache import CacheState, is_evictable, maximal_cached
from .dag import DependencyDag
from .errors import EmptyBucket, EmptyPool


class Bucket:
    """A shrinking set of cached items tagged with its seeding item."""

    __slots__ = ("items", "origin", "bucket_id", "_top")

    def __init__(self, items: set[int], origin: int, bucket_id: int = 0):
        self.items = set(items)
        self.origin = origin
        self.bucket_id = bucket_id
        self._top: int | None = None  # memoized max-tau item

    def discard(self, items: set[int]) -> None:
        if self.items & items:
            self.items -= items
            self._top = None

    def __len__(self) -> int:
        return len(self.items)

    def __repr__(self) -> str:
        return f"Bucket(id={self.bucket_id}, origin={self.origin}, items={sorted(self.items)})"


class BucketPool:
    """An ordered list of live buckets plus freeze bookkeeping.

    ``frozen_this_phase`` counts buckets dropped since the pool was last
    regenerated; when several freeze in one operation they are counted in
    pool order.  ``freeze_order`` records the bucket ids in drop order.
    """

    __slots__ = ("buckets", "frozen_this_phase", "freeze_order")

    def __init__(self, buckets: list[Bucket] | None = None):
        self.buckets: list[Bucket] = [] if buckets is None else buckets
        self.frozen_this_phase = 0
        self.freeze_order: list[int] = []

    def __len__(self) -> int:
        return len(self.buckets)

    def __bool__(self) -> bool:
        return bool(self.buckets)

    def union(self) -> set[int]:
        out: set[int] = set()
        for b in self.buckets:
            out |= b.items
        return out


def max_tau_item(bucket: Bucket, dag: DependencyDag) -> int:
    """The item of the bucket with the highest tau rank."""
    if not bucket.items:
        raise EmptyBucket("bucket has no items")
    if bucket._top is None:
        rank = dag.tau.rank
        bucket._top = max(bucket.items, key=lambda y: rank[y])
    return bucket._top


def reset_buckets(cache: CacheState, dag: DependencyDag) -> BucketPool:
    """Regenerate the pool: one bucket T(x) per maximal cached item x.

    Buckets are ordered (and numbered) by increasing seed-item id, which
    keeps runs reproducible and lets the edge-free case mirror a classic
    marking algorithm's unmarked set.
    """
    pool = BucketPool()
    for i, x in enumerate(maximal_cached(cache, dag)):
        pool.buckets.append(Bucket(set(dag.descendants(x)), origin=x, bucket_id=i))
    return pool


def _is_frozen(bucket: Bucket, cache: CacheState, dag: DependencyDag) -> bool:
    if not bucket.items:
        return True
    return not is_evictable(cache, dag, max_tau_item(bucket, dag))


def drop_frozen(pool: BucketPool, cache: CacheState, dag: DependencyDag) -> int:
    """Drop every frozen bucket, recording freezes in pool order."""
    live: list[Bucket] = []
    dropped = 0
    for b in pool.buckets:
        if _is_frozen(b, cache, dag):
            pool.frozen_this_phase += 1
            pool.freeze_order.append(b.bucket_id)
            dropped += 1
        else:
            live.append(b)
    if dropped:
        pool.buckets = live
    return dropped


def remove_items(pool: BucketPool, cache: CacheState, dag: DependencyDag, items: set[int]) -> int:
    """Remove the given items from every bucket, then drop frozen buckets.

    The freeze test runs against the current cache, so it also catches
    buckets staled by fetches since the previous pool operation.  Returns
    the number of buckets dropped.
    """
    if items:
        for b in pool.buckets:
            b.discard(items)
    return drop_frozen(pool, cache, dag)


def pick_uniform(pool: BucketPool, rng: random.Random) -> Bucket:
    """Pick a live bucket uniformly at random, consuming exactly one draw."""
    if not pool.buckets:
        raise EmptyPool("no live bucket to pick from")
    return pool.buckets[rng.randrange(len(pool.buckets))]


def check_pool(pool: BucketPool, cache: CacheState, dag: DependencyDag) -> None:
    """Debug invariant: live buckets are non-empty, cached, and evictable."""
    for b in pool.buckets:
        assert b.items, f"live bucket {b.bucket_id} is empty"
        assert b.items <= cache.cached, (
            f"bucket {b.bucket_id} holds uncached items {sorted(b.items - cache.cached)}"
        )
        top = max_tau_item(b, dag)
        assert is_evictable(cache, dag, top), (
            f"bucket {b.bucket_id} max-tau item {top} is not evictable"
        )
