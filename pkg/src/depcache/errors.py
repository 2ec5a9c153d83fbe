"""Exception types shared across the package.

Every error raised by this package derives from :class:`DepCacheError`, so
callers (notably the CLI) can catch one type and exit cleanly.
"""

from __future__ import annotations


class DepCacheError(Exception):
    """Base class for all errors raised by this package."""


# --- graph construction / queries ---------------------------------------

class CycleDetected(DepCacheError):
    """The dependency graph contains a cycle (self-loops included)."""


class InvalidId(DepCacheError):
    """An item id is outside the dense range 0..n-1."""


class DuplicateEdge(DepCacheError):
    """The same dependency edge was given twice."""


class EmptyUniverse(DepCacheError):
    """An operation that needs at least one item was given none."""


class TooLarge(DepCacheError):
    """A brute-force helper was asked to exceed its size guard."""


class InvalidArgument(DepCacheError):
    """A numeric argument is outside its documented domain."""


# --- cache state --------------------------------------------------------

class NotCached(DepCacheError):
    """The item is not in the cache."""


class AlreadyCached(DepCacheError):
    """The item is already in the cache."""


class MissingDependencies(DepCacheError):
    """Fetching the item would leave some dependency uncached."""


class CacheFull(DepCacheError):
    """The cache already holds k items."""


class WouldBreakFeasibility(DepCacheError):
    """Evicting the item would strand a cached item that depends on it."""


# --- bucket pool --------------------------------------------------------

class EmptyPool(DepCacheError):
    """A bucket was requested from an empty pool."""


class EmptyBucket(DepCacheError):
    """An operation needs a non-empty bucket."""


# --- online policies ----------------------------------------------------

class InvalidCapacity(DepCacheError):
    """The cache capacity k is not a positive integer."""


class RequestTooLarge(DepCacheError):
    """The requested item's dependency closure does not fit in the cache."""


class UnsupportedDag(DepCacheError):
    """The policy only supports a restricted graph class (e.g. no edges)."""


# --- offline optimum ----------------------------------------------------

class StateSpaceTooLarge(DepCacheError):
    """The feasible-configuration space exceeds the enumeration budget."""


# --- workload generators ------------------------------------------------

class InvalidHeight(DepCacheError):
    """A tree height parameter is not a positive integer."""


class AllItemsPruned(DepCacheError):
    """No admissible item remains after pruning, or sampling gave up."""


class InvalidParameters(DepCacheError):
    """Workload generator parameters are out of range."""
