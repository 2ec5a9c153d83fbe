"""Workload generators: graphs and request traces.

Provides the balanced binary tree with Zipf-like and truncated-geometric
request distributions, the adversarial isolated-items-plus-chain instance
used for lower-bound experiments, random instances for verification
suites, and a one-id-per-line trace file format.

Tree nodes use heap numbering: node 0 is the root and node i has children
2i+1 and 2i+2, so depth-d nodes (root depth 1) occupy ids
``2**(d-1)-1 .. 2**d-2``.  With the default orientation each node depends
on its parent, hence T(v) is v's path to the root and |T(v)| its depth;
the opposite orientation makes each node depend on its children, so T(v)
is v's subtree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .dag import DependencyDag, build_dag
from .errors import AllItemsPruned, InvalidHeight, InvalidParameters

_RETRY_CAP = 1_000_000

TOWARD_ROOT = "toward_root"
TOWARD_LEAVES = "toward_leaves"


@dataclass
class Trace:
    """A request sequence plus the parameters that produced it."""

    items: list[int]
    meta: dict[str, object] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.items)


# --- graphs -------------------------------------------------------------


def gen_balanced_tree(h: int, orientation: str = TOWARD_ROOT) -> DependencyDag:
    """Balanced binary tree of height h with 2**h - 1 nodes."""
    if h < 1 or int(h) != h:
        raise InvalidHeight(f"height must be a positive integer, got {h}")
    if orientation not in (TOWARD_ROOT, TOWARD_LEAVES):
        raise InvalidParameters(f"unknown orientation {orientation!r}")
    n = 2**h - 1
    edges = []
    for child in range(1, n):
        parent = (child - 1) // 2
        if orientation == TOWARD_ROOT:
            edges.append((child, parent))
        else:
            edges.append((parent, child))
    return build_dag(n, edges)


def gen_lower_bound_instance(k: int, l: int) -> tuple[DependencyDag, list[int]]:
    """The adversarial instance: l-1 isolated items plus a chain.

    Returns the graph over k+1 items together with the designated set L:
    the isolated items and the head of the chain (the item whose closure
    is the whole chain).  Requires 1 <= l < k.
    """
    if not (1 <= l < k):
        raise InvalidParameters(f"need 1 <= l < k, got l={l}, k={k}")
    n = k + 1
    # ids 0..l-2 isolated; ids l-1..k form a chain with the head at id k
    edges = [(i + 1, i) for i in range(l - 1, k)]
    dag = build_dag(n, edges)
    designated = list(range(l - 1)) + [k]
    return dag, designated


# --- tree traces --------------------------------------------------------


def _level_start(i: int) -> int:
    return 2 ** (i - 1) - 1


def _sample_tree_trace(
    dag: DependencyDag,
    h: int,
    level_weights: list[float],
    length: int,
    k: int,
    rng: random.Random,
) -> list[int]:
    """Draw nodes level-first, uniform within the level, rejecting any node
    whose closure exceeds k (with a retry cap)."""
    if all(dag.closure_size(v) > k for v in range(dag.n)):
        raise AllItemsPruned(f"no item has a closure of size <= {k}")
    levels = list(range(1, h + 1))
    cum = []
    total = 0.0
    for w in level_weights:
        total += w
        cum.append(total)
    items: list[int] = []
    attempts = 0
    while len(items) < length:
        if attempts >= _RETRY_CAP:
            raise AllItemsPruned(f"gave up after {_RETRY_CAP} rejected draws (k={k})")
        attempts += 1
        i = rng.choices(levels, cum_weights=cum, k=1)[0]
        node = _level_start(i) + rng.randrange(2 ** (i - 1))
        if dag.closure_size(node) > k:
            continue
        items.append(node)
    return items


def gen_zipf_trace(
    h: int,
    a: float,
    length: int,
    k: int,
    seed: int,
    orientation: str = TOWARD_ROOT,
    per_level_mass: bool = False,
) -> Trace:
    """Zipf-like trace over the height-h tree.

    Default reading: a node at depth i has probability proportional to
    2**-(i-1) * (h-i+1)**-a, i.e. each *level* carries mass proportional
    to (h-i+1)**-a split uniformly over its nodes.  With
    ``per_level_mass=True`` the full expression is instead read as the
    level's mass.  Draws whose closure exceeds k are rejected and redrawn.
    """
    if length < 0:
        raise InvalidParameters(f"length must be non-negative, got {length}")
    if a <= 1:
        raise InvalidParameters(f"exponent must exceed 1, got {a}")
    dag = gen_balanced_tree(h, orientation)
    if per_level_mass:
        weights = [(h - i + 1) ** -a / 2 ** (i - 1) for i in range(1, h + 1)]
    else:
        weights = [(h - i + 1) ** -a for i in range(1, h + 1)]
    rng = random.Random(seed)
    items = _sample_tree_trace(dag, h, weights, length, k, rng)
    meta = {
        "generator": "zipf",
        "h": h,
        "a": a,
        "length": length,
        "k": k,
        "seed": seed,
        "orientation": orientation,
        "per_level_mass": per_level_mass,
    }
    return Trace(items=items, meta=meta)


def gen_geometric_trace(
    h: int,
    p: float,
    length: int,
    k: int,
    seed: int,
    orientation: str = TOWARD_ROOT,
) -> Trace:
    """Truncated-geometric trace: index i in 1..2**h-1 has probability
    proportional to (1-p)**(i-1) * p and maps to node id i-1."""
    if length < 0:
        raise InvalidParameters(f"length must be non-negative, got {length}")
    if not (0 < p < 1):
        raise InvalidParameters(f"success probability must lie in (0, 1), got {p}")
    dag = gen_balanced_tree(h, orientation)
    n = 2**h - 1
    if all(dag.closure_size(v) > k for v in range(n)):
        raise AllItemsPruned(f"no item has a closure of size <= {k}")
    rng = random.Random(seed)
    cum = []
    total = 0.0
    for i in range(1, n + 1):
        total += (1 - p) ** (i - 1) * p
        cum.append(total)
    ids = list(range(n))
    items: list[int] = []
    attempts = 0
    while len(items) < length:
        if attempts >= _RETRY_CAP:
            raise AllItemsPruned(f"gave up after {_RETRY_CAP} rejected draws (k={k})")
        attempts += 1
        node = rng.choices(ids, cum_weights=cum, k=1)[0]
        if dag.closure_size(node) > k:
            continue
        items.append(node)
    meta = {
        "generator": "geometric",
        "h": h,
        "p": p,
        "length": length,
        "k": k,
        "seed": seed,
        "orientation": orientation,
    }
    return Trace(items=items, meta=meta)


# --- lower-bound trace --------------------------------------------------


def gen_lower_bound_trace(k: int, l: int, phases: int, seed: int) -> Trace:
    """Adversarial trace over :func:`gen_lower_bound_instance`.

    Each of the ``phases`` subsequences opens with a request drawn
    uniformly from the designated set L (excluding the previous opener)
    and then requests every item outside L once, in ascending id order.
    Needs l >= 2 so consecutive openers can differ.
    """
    if not (2 <= l < k):
        raise InvalidParameters(f"need 2 <= l < k, got l={l}, k={k}")
    if phases < 1:
        raise InvalidParameters(f"need at least one phase, got {phases}")
    _, designated = gen_lower_bound_instance(k, l)
    others = sorted(set(range(k + 1)) - set(designated))
    rng = random.Random(seed)
    items: list[int] = []
    prev: int | None = None
    for _ in range(phases):
        pool = [x for x in designated if x != prev]
        opener = pool[rng.randrange(len(pool))]
        items.append(opener)
        items.extend(others)
        prev = opener
    meta = {"generator": "lower_bound", "k": k, "l": l, "phases": phases, "seed": seed}
    return Trace(items=items, meta=meta)


# --- random instances for verification ----------------------------------


def random_dag(rng: random.Random, n_max: int, edge_prob: float | None = None) -> DependencyDag:
    """A random DAG: edges only point from higher to lower ids."""
    n = rng.randint(1, n_max)
    p = rng.uniform(0.0, 0.5) if edge_prob is None else edge_prob
    edges = [
        (u, v)
        for u in range(1, n)
        for v in range(u)
        if rng.random() < p
    ]
    return build_dag(n, edges)


def random_trace(rng: random.Random, dag: DependencyDag, k: int, length: int) -> list[int]:
    """Uniform requests over the items whose closure fits in k."""
    admissible = [v for v in range(dag.n) if dag.closure_size(v) <= k]
    if not admissible:
        raise AllItemsPruned(f"no item has a closure of size <= {k}")
    return [admissible[rng.randrange(len(admissible))] for _ in range(length)]


# --- trace files --------------------------------------------------------


def save_trace(trace: Trace, path: str) -> None:
    lines = [f"# {key}={value}" for key, value in trace.meta.items()]
    lines.append(f"# requests={len(trace.items)}")
    lines += [str(v) for v in trace.items]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_trace(path: str) -> Trace:
    items: list[int] = []
    meta: dict[str, object] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    meta[key.strip()] = value.strip()
                continue
            items.append(int(line))
    return Trace(items=items, meta=meta)
