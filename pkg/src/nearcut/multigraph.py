"""Capacitated multigraph model with exhaustive cut enumeration.

Node sets are plain Python ints used as bitmasks (bit ``i`` set iff node
``i`` is in the set).  All cut bookkeeping works on *canonical* masks: the
side of the cut that does not contain node 0.  A graph on ``n`` nodes has
``2**(n-1) - 1`` canonical cuts, exactly one per complement pair.

Everything here is integer arithmetic; cut values are exact.  The
exhaustive engine is the authoritative source of connectivity answers up
to :func:`exhaustive_limit` nodes and refuses to run above it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from .errors import InputError, LimitError

DEFAULT_EXHAUSTIVE_LIMIT = 24
_LIMIT_ENV = "NEARCUT_EXHAUSTIVE_LIMIT"

EdgeFilter = Union[str, Callable[["EdgeRecord"], bool]]


def exhaustive_limit() -> int:
    """Node-count ceiling for exhaustive cut enumeration (env-overridable)."""
    raw = os.environ.get(_LIMIT_ENV)
    if raw is None:
        return DEFAULT_EXHAUSTIVE_LIMIT
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"bad {_LIMIT_ENV} value: {raw!r}") from exc


# ---------------------------------------------------------------------------
# Node-mask helpers


def mask_from_nodes(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def nodes_from_mask(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def complement_mask(mask: int, n: int) -> int:
    return mask ^ full_mask(n)


def canonical_mask(mask: int, n: int) -> int:
    """Representative of the complement pair: the side avoiding node 0."""
    return complement_mask(mask, n) if mask & 1 else mask


def is_proper_subset(mask: int, n: int) -> bool:
    return 0 < mask < full_mask(n)


def edge_crosses(u: int, v: int, mask: int) -> bool:
    return ((mask >> u) & 1) != ((mask >> v) & 1)


# ---------------------------------------------------------------------------
# Graph model


@dataclass(frozen=True)
class EdgeRecord:
    """One edge: endpoints, cost, capacity, and the unsafe/base flags."""

    u: int
    v: int
    cost: int = 0
    capacity: int = 1
    unsafe: bool = False
    base: bool = False


@dataclass(frozen=True)
class Multigraph:
    """Immutable capacitated multigraph; parallel edges allowed.

    Edge identifiers are list positions, which stay stable because the
    value never mutates.  Derived cut-value tables are cached per
    ``(filter, weighted)`` pair.
    """

    n: int
    edges: tuple[EdgeRecord, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"node count must be >= 1, got {self.n}")
        object.__setattr__(self, "edges", tuple(self.edges))
        for i, e in enumerate(self.edges):
            if not isinstance(e, EdgeRecord):
                raise InputError(f"edge {i} is not an EdgeRecord")
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise InputError(f"edge {i} endpoint out of range: {e}")
            if e.u == e.v:
                raise InputError(f"edge {i} is a self-loop: {e}")
            if e.cost < 0:
                raise InputError(f"edge {i} has negative cost: {e}")
            if e.capacity < 1:
                raise InputError(f"edge {i} has non-positive capacity: {e}")

    @classmethod
    def from_edges(cls, n: int, specs: Iterable) -> "Multigraph":
        """Build from (u, v[, cost[, capacity[, unsafe[, base]]]]) tuples."""
        edges = []
        for spec in specs:
            if isinstance(spec, EdgeRecord):
                edges.append(spec)
                continue
            u, v, *rest = spec
            cost = rest[0] if len(rest) > 0 else 0
            cap = rest[1] if len(rest) > 1 else 1
            unsafe = bool(rest[2]) if len(rest) > 2 else False
            base = bool(rest[3]) if len(rest) > 3 else False
            edges.append(EdgeRecord(u, v, cost, cap, unsafe, base))
        return cls(n, tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_ids(self, filt: EdgeFilter = "all") -> tuple[int, ...]:
        pred = resolve_filter(filt)
        return tuple(i for i, e in enumerate(self.edges) if pred(e))

    @cached_property
    def _cut_cache(self) -> dict:
        return {}


FILTERS: dict[str, Callable[[EdgeRecord], bool]] = {
    "all": lambda e: True,
    "unsafe": lambda e: e.unsafe,
    "safe": lambda e: not e.unsafe,
    "base": lambda e: e.base,
    "nonbase": lambda e: not e.base,
}


def resolve_filter(filt: EdgeFilter) -> Callable[[EdgeRecord], bool]:
    if callable(filt):
        return filt
    try:
        return FILTERS[filt]
    except KeyError:
        raise InputError(f"unknown edge filter {filt!r}; known: {sorted(FILTERS)}")


def subgraph(g: Multigraph, edge_ids: Iterable[int]) -> Multigraph:
    """Same node set, edges restricted to the given ids (in id order)."""
    ids = sorted(set(edge_ids))
    for i in ids:
        if not (0 <= i < g.m):
            raise InputError(f"edge id {i} out of range")
    return Multigraph(g.n, tuple(g.edges[i] for i in ids))


@dataclass(frozen=True)
class CutRecord:
    """A canonical cut with its cached statistics.

    ``mask`` is the canonical side (node 0 excluded); ``size`` counts all
    crossing edges, ``cap_weight`` sums their capacities and
    ``unsafe_count`` counts the crossing unsafe edges.
    """

    mask: int
    size: int
    cap_weight: int
    unsafe_count: int

    def nodes(self) -> tuple[int, ...]:
        return nodes_from_mask(self.mask)


# ---------------------------------------------------------------------------
# Cut evaluation


def cut_degree(g: Multigraph, mask: int, filt: EdgeFilter = "all",
               weighted: bool = False) -> int:
    """Number (or total capacity) of filtered edges crossing the cut."""
    if not is_proper_subset(mask, g.n):
        raise InputError(f"cut side must be a non-empty proper subset, got mask {mask:#x}")
    pred = resolve_filter(filt)
    total = 0
    for e in g.edges:
        if pred(e) and edge_crosses(e.u, e.v, mask):
            total += e.capacity if weighted else 1
    return total


def cut_value_array(g: Multigraph, filt: EdgeFilter = "all",
                    weighted: bool = False) -> np.ndarray:
    """Cut values for every canonical mask, indexed by ``mask >> 1``.

    Index 0 corresponds to the empty set and is not a cut; callers must
    skip it.  Cached on the graph for string filters.
    """
    limit = exhaustive_limit()
    if g.n > limit:
        raise LimitError(
            f"exhaustive enumeration limited to n <= {limit} nodes, got n = {g.n} "
            f"(override via {_LIMIT_ENV})")
    key = (filt, weighted) if isinstance(filt, str) else None
    if key is not None and key in g._cut_cache:
        return g._cut_cache[key]
    pred = resolve_filter(filt)
    size = 1 << (g.n - 1)
    idx = np.arange(size, dtype=np.int64)
    vals = np.zeros(size, dtype=np.int64)
    for e in g.edges:
        if not pred(e):
            continue
        w = e.capacity if weighted else 1
        bu = (idx >> (e.u - 1)) & 1 if e.u else 0
        bv = (idx >> (e.v - 1)) & 1 if e.v else 0
        vals += w * (bu ^ bv)
    if key is not None:
        g._cut_cache[key] = vals
    return vals


def min_cut_value(g: Multigraph, filt: EdgeFilter = "all",
                  weighted: bool = False) -> int:
    """Global minimum cut value; 0 when the filtered graph is disconnected."""
    if g.n < 2:
        raise InputError("minimum cut needs at least 2 nodes")
    vals = cut_value_array(g, filt, weighted)
    return int(vals[1:].min())


def is_k_edge_connected(g: Multigraph, k: int, filt: EdgeFilter = "all",
                        weighted: bool = False) -> bool:
    if g.n < 2:
        return True
    return min_cut_value(g, filt, weighted) >= k


def enumerate_cuts_at_most(g: Multigraph, threshold: int,
                           filt: EdgeFilter = "all",
                           weighted: bool = False) -> tuple[CutRecord, ...]:
    """All canonical cuts with filtered value <= threshold.

    One representative per complement pair, sorted by (value, mask).
    """
    if g.n < 2:
        return ()
    vals = cut_value_array(g, filt, weighted)
    size_arr = cut_value_array(g, "all", False)
    cap_arr = cut_value_array(g, "all", True)
    unsafe_arr = cut_value_array(g, "unsafe", False)
    hits = np.nonzero(vals[1:] <= threshold)[0] + 1
    order = sorted(hits.tolist(), key=lambda i: (int(vals[i]), i))
    return tuple(
        CutRecord(mask=i << 1, size=int(size_arr[i]), cap_weight=int(cap_arr[i]),
                  unsafe_count=int(unsafe_arr[i]))
        for i in order)


def cut_masks_with_value(g: Multigraph, values: Iterable[int],
                         filt: EdgeFilter = "all",
                         weighted: bool = False) -> tuple[int, ...]:
    """Canonical masks whose filtered cut value lies in ``values``."""
    if g.n < 2:
        return ()
    wanted = set(int(v) for v in values)
    vals = cut_value_array(g, filt, weighted)
    out = [i << 1 for i in range(1, len(vals)) if int(vals[i]) in wanted]
    return tuple(out)


def is_connected(g: Multigraph, filt: EdgeFilter = "all") -> bool:
    if g.n == 1:
        return True
    pred = resolve_filter(filt)
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = g.n
    for e in g.edges:
        if not pred(e):
            continue
        ru, rv = find(e.u), find(e.v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps == 1


# ---------------------------------------------------------------------------
# Quotients


@dataclass(frozen=True)
class QuotientResult:
    """Contraction of a graph by a node partition.

    ``graph`` has one node per class and one merged edge per class pair
    (capacity and cost summed).  ``unsafe_tally`` preserves, per merged
    edge, how many of the original edges were unsafe.
    """

    graph: Multigraph
    classes: tuple[int, ...]       # class index -> node mask
    class_of: tuple[int, ...]      # node -> class index
    unsafe_tally: tuple[int, ...]  # per merged edge
    edge_count: tuple[int, ...]    # original edge multiplicity per merged edge


def quotient(g: Multigraph, partition: Sequence[int]) -> QuotientResult:
    """Shrink each partition class to a node, merging parallel edges."""
    seen = 0
    for mask in partition:
        if mask == 0:
            raise InputError("partition classes must be non-empty")
        if mask & seen:
            raise InputError("partition classes overlap")
        seen |= mask
    if seen != full_mask(g.n):
        raise InputError("partition does not cover all nodes")
    classes = tuple(int(mask) for mask in partition)
    class_of = [0] * g.n
    for ci, mask in enumerate(classes):
        for v in nodes_from_mask(mask):
            class_of[v] = ci
    merged: dict[tuple[int, int], list[int]] = {}
    for e in g.edges:
        ca, cb = class_of[e.u], class_of[e.v]
        if ca == cb:
            continue
        key = (min(ca, cb), max(ca, cb))
        acc = merged.setdefault(key, [0, 0, 0, 0])  # cap, cost, unsafe, count
        acc[0] += e.capacity
        acc[1] += e.cost
        acc[2] += 1 if e.unsafe else 0
        acc[3] += 1
    edges = []
    tallies = []
    counts = []
    for (ca, cb) in sorted(merged):
        cap, cost, tally, count = merged[(ca, cb)]
        edges.append(EdgeRecord(ca, cb, cost=cost, capacity=cap,
                                unsafe=tally > 0, base=False))
        tallies.append(tally)
        counts.append(count)
    qg = Multigraph(len(classes), tuple(edges))
    return QuotientResult(graph=qg, classes=classes, class_of=tuple(class_of),
                          unsafe_tally=tuple(tallies), edge_count=tuple(counts))
