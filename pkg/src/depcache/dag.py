"""Dependency graphs for constrained caching.

Items are dense integer ids ``0..n-1``.  A directed edge ``(u, v)`` means
"u depends on v": whenever u is cached, v must be cached too.  The closure
``T(x)`` of an item is x together with every item reachable from it along
dependency edges; a cache is feasible exactly when it is closed under
dependencies.

The module also provides the canonical eviction order ``tau`` (a total
order in which every item precedes everything that depends on it), the
maximum-antichain size of the reachability partial order (used to bound
competitive ratios), harmonic numbers, and a small text file format.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import (
    CycleDetected,
    DuplicateEdge,
    EmptyUniverse,
    InvalidArgument,
    InvalidId,
    TooLarge,
)

_BRUTE_FORCE_LIMIT = 22


@dataclass(frozen=True)
class TauOrder:
    """A total eviction order consistent with the dependency structure.

    ``order[p]`` is the item at position p and ``rank[x]`` the position of
    item x.  For every edge (u, v) the dependency v comes first:
    ``rank[v] < rank[u]``.
    """

    order: tuple[int, ...]
    rank: tuple[int, ...]


class DependencyDag:
    """A validated dependency graph over items ``0..n-1``.

    ``deps[x]`` lists the direct dependencies of x (out-neighbours) and
    ``parents[x]`` the items that directly depend on x (in-neighbours).
    Closures and the tau order are computed lazily and memoized; the graph
    itself is immutable after construction.
    """

    def __init__(self, n: int, edges: list[tuple[int, int]] | tuple[tuple[int, int], ...] = ()):
        if n < 0:
            raise InvalidId(f"item count must be non-negative, got {n}")
        seen: set[tuple[int, int]] = set()
        deps: list[list[int]] = [[] for _ in range(n)]
        parents: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n) or not (0 <= v < n):
                raise InvalidId(f"edge ({u}, {v}) references an id outside 0..{n - 1}")
            if u == v:
                raise CycleDetected(f"self-loop on item {u}")
            if (u, v) in seen:
                raise DuplicateEdge(f"edge ({u}, {v}) given twice")
            seen.add((u, v))
            deps[u].append(v)
            parents[v].append(u)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(seen))
        self.deps: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(d)) for d in deps)
        self.parents: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(p)) for p in parents)
        self._tau: TauOrder | None = None
        self._closures: dict[int, frozenset[int]] = {}
        self._closures_sorted: dict[int, tuple[int, ...]] = {}
        self._antichain: int | None = None
        # Cycle check up front so later queries cannot loop forever.
        self._check_acyclic()

    def _check_acyclic(self) -> None:
        indeg = [len(self.deps[x]) for x in range(self.n)]
        ready = [x for x in range(self.n) if indeg[x] == 0]
        emitted = 0
        while ready:
            x = ready.pop()
            emitted += 1
            for p in self.parents[x]:
                indeg[p] -= 1
                if indeg[p] == 0:
                    ready.append(p)
        if emitted != self.n:
            stuck = [x for x in range(self.n) if indeg[x] > 0]
            raise CycleDetected(f"cycle through items {stuck}")

    @property
    def edge_free(self) -> bool:
        return not self.edges

    @property
    def tau(self) -> TauOrder:
        if self._tau is None:
            self._tau = compute_tau(self)
        return self._tau

    def descendants(self, x: int) -> frozenset[int]:
        """The closure T(x): x plus everything reachable from it."""
        if not (0 <= x < self.n):
            raise InvalidId(f"item {x} outside 0..{self.n - 1}")
        cached = self._closures.get(x)
        if cached is not None:
            return cached
        seen = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for d in self.deps[y]:
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        result = frozenset(seen)
        self._closures[x] = result
        return result

    def closure_sorted(self, x: int) -> tuple[int, ...]:
        """T(x) as a tuple sorted by increasing tau rank (dependencies first)."""
        cached = self._closures_sorted.get(x)
        if cached is not None:
            return cached
        rank = self.tau.rank
        result = tuple(sorted(self.descendants(x), key=lambda y: rank[y]))
        self._closures_sorted[x] = result
        return result

    def closure_size(self, x: int) -> int:
        return len(self.descendants(x))

    def max_antichain_size(self) -> int:
        if self._antichain is None:
            self._antichain = max_antichain_size(self)
        return self._antichain


def build_dag(n: int, edges: list[tuple[int, int]] | tuple[tuple[int, int], ...] = ()) -> DependencyDag:
    """Validate and build a :class:`DependencyDag`."""
    return DependencyDag(n, edges)


def compute_tau(dag: DependencyDag) -> TauOrder:
    """The pinned deterministic tau order.

    Repeatedly emit the smallest-id item whose dependencies have all been
    emitted.  The result is a total order with dependencies first, so for
    every edge (u, v): rank[v] < rank[u].
    """
    pending = [len(dag.deps[x]) for x in range(dag.n)]
    ready = [x for x in range(dag.n) if pending[x] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        x = heapq.heappop(ready)
        order.append(x)
        for p in dag.parents[x]:
            pending[p] -= 1
            if pending[p] == 0:
                heapq.heappush(ready, p)
    if len(order) != dag.n:
        raise CycleDetected("graph has a cycle; no tau order exists")
    rank = [0] * dag.n
    for pos, x in enumerate(order):
        rank[x] = pos
    return TauOrder(order=tuple(order), rank=tuple(rank))


def _strict_descendant_masks(dag: DependencyDag) -> list[int]:
    """Bitmask of strict descendants (reachable, excluding self) per item."""
    masks = [0] * dag.n
    for x in dag.tau.order:  # dependencies are processed before dependents
        m = 0
        for d in dag.deps[x]:
            m |= (1 << d) | masks[d]
        masks[x] = m
    return masks


def max_antichain_size(dag: DependencyDag) -> int:
    """Maximum number of pairwise incomparable items.

    Items are comparable when one is reachable from the other.  By
    Dilworth's theorem the answer equals n minus the size of a maximum
    matching in the bipartite graph pairing each item with its strict
    descendants, which we hand to scipy's matching routine.
    """
    if dag.n == 0:
        raise EmptyUniverse("antichain of an empty universe")
    masks = _strict_descendant_masks(dag)
    rows: list[int] = []
    cols: list[int] = []
    for u in range(dag.n):
        m = masks[u]
        while m:
            low = m & -m
            cols.append(low.bit_length() - 1)
            rows.append(u)
            m ^= low
    if not rows:
        return dag.n
    bi = csr_matrix(
        (np.ones(len(rows), dtype=np.int8), (np.array(rows), np.array(cols))),
        shape=(dag.n, dag.n),
    )
    match = maximum_bipartite_matching(bi, perm_type="column")
    return dag.n - int((match >= 0).sum())


def max_antichain_bruteforce(dag: DependencyDag) -> int:
    """Exhaustive maximum-antichain search, usable up to n = 22."""
    if dag.n == 0:
        raise EmptyUniverse("antichain of an empty universe")
    if dag.n > _BRUTE_FORCE_LIMIT:
        raise TooLarge(f"brute force limited to n <= {_BRUTE_FORCE_LIMIT}, got {dag.n}")
    masks = _strict_descendant_masks(dag)
    comp = [0] * dag.n  # symmetric comparability masks
    for u in range(dag.n):
        m = masks[u]
        comp[u] |= m
        while m:
            low = m & -m
            comp[low.bit_length() - 1] |= 1 << u
            m ^= low
    n = dag.n
    best = 0

    def grow(i: int, chosen: int, count: int) -> None:
        nonlocal best
        if count + (n - i) <= best:
            return
        if i == n:
            best = max(best, count)
            return
        if not (comp[i] & chosen):
            grow(i + 1, chosen | (1 << i), count + 1)
        grow(i + 1, chosen, count)

    grow(0, 0, 0)
    return best


def harmonic(m: int) -> float:
    """The m-th harmonic number 1 + 1/2 + ... + 1/m."""
    if m < 1:
        raise InvalidArgument(f"harmonic number needs m >= 1, got {m}")
    return sum(1.0 / i for i in range(1, m + 1))


# --- file format --------------------------------------------------------
#
# Line 1: the item count n.  Each following non-comment line holds one
# edge "u v" (u depends on v).  Lines starting with '#' are comments.

def save_dag(dag: DependencyDag, path: str) -> None:
    lines = [f"# dependency graph: n={dag.n} edges={len(dag.edges)}", str(dag.n)]
    lines += [f"{u} {v}" for u, v in dag.edges]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_dag(path: str) -> DependencyDag:
    n: int | None = None
    edges: list[tuple[int, int]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if n is None:
                n = int(line)
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InvalidArgument(f"bad edge line: {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise InvalidArgument(f"no item count found in {path}")
    return build_dag(n, edges)
