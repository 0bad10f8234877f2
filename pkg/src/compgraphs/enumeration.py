"""Orientations of complete multipartite graphs and competition-graph censuses.

An orientation is addressed by an ``m``-bit counter over the lexicographically
sorted edge list of ``K_{n_1,...,n_k}``: bit ``b`` clear orients edge ``b`` from
its lower endpoint, set orients it from the higher one.

Two routes produce a census. ``prune="none"`` sweeps every counter with numpy
and tests each competition graph for triangles directly. ``prune="indegree_le_2"``
walks the counters depth first and cuts any branch that gives a vertex a third
in-neighbour; that is only sound when the predicate forces a triangle-free
competition graph, because three in-neighbours of one vertex are a triangle.
"""
from __future__ import annotations

import math
import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .canonical import CanonicalForm, canonical_form
from .graphs import MAX_VERTICES, Digraph, Graph, competition_graph, has_triangle, is_connected

MAX_STREAM_EDGES = 30
CHUNK = 1 << 16


class UniverseTooLargeError(ValueError):
    pass


class UnsoundPruneError(ValueError):
    pass


@dataclass(frozen=True)
class PartiteShape:
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        sizes = tuple(sorted((int(s) for s in self.sizes), reverse=True))
        if not sizes:
            raise ValueError("a shape needs at least one part")
        if sizes[-1] < 1:
            raise ValueError(f"part sizes must be positive: {sizes}")
        if sum(sizes) > MAX_VERTICES:
            raise ValueError(f"shape {sizes} exceeds {MAX_VERTICES} vertices")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def of(cls, *sizes: int) -> PartiteShape:
        return cls(tuple(sizes))

    @classmethod
    def parse(cls, text: str) -> PartiteShape:
        return cls(tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok))

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def order(self) -> int:
        return sum(self.sizes)

    @property
    def edge_count(self) -> int:
        return sum(a * b for a, b in combinations(self.sizes, 2))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.sizes)) + ")"


@dataclass(frozen=True)
class VertexPartition:
    shape: PartiteShape
    part_of: tuple[int, ...]

    def __post_init__(self) -> None:
        expected = tuple(i for i, s in enumerate(self.shape.sizes) for _ in range(s))
        if self.part_of != expected:
            raise ValueError("partition must list part 0 first, then part 1, ...")

    @classmethod
    def canonical(cls, shape: PartiteShape) -> VertexPartition:
        return cls(shape, tuple(i for i, s in enumerate(shape.sizes) for _ in range(s)))

    def parts(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.shape.sizes]
        for v, p in enumerate(self.part_of):
            out[p].append(v)
        return out


def complete_multipartite(shape: PartiteShape) -> tuple[Graph, VertexPartition]:
    part = VertexPartition.canonical(shape)
    edges = [(u, v) for u, v in combinations(range(shape.order), 2) if part.part_of[u] != part.part_of[v]]
    return Graph.from_edges(shape.order, edges), part


@dataclass(frozen=True)
class OrientationUniverse:
    shape: PartiteShape
    partition: VertexPartition = field(init=False)
    base: Graph = field(init=False)
    base_edges: tuple[tuple[int, int], ...] = field(init=False)

    def __post_init__(self) -> None:
        base, part = complete_multipartite(self.shape)
        object.__setattr__(self, "partition", part)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "base_edges", tuple(base.edges()))
        if len(self.base_edges) != self.shape.edge_count:
            raise AssertionError("edge count disagrees with the shape")

    @classmethod
    def of(cls, *sizes: int) -> OrientationUniverse:
        return cls(PartiteShape(tuple(sizes)))

    @classmethod
    def tournament(cls, n: int) -> OrientationUniverse:
        return cls(PartiteShape((1,) * n))

    @property
    def n(self) -> int:
        return self.shape.order

    @property
    def m(self) -> int:
        return len(self.base_edges)

    @property
    def size(self) -> int:
        return 1 << self.m

    def orientation(self, counter: int) -> Digraph:
        out = [0] * self.n
        for b, (u, v) in enumerate(self.base_edges):
            if counter >> b & 1:
                out[v] |= 1 << u
            else:
                out[u] |= 1 << v
        return Digraph(self.n, tuple(out))

    def counter_of(self, d: Digraph) -> int:
        counter = 0
        for b, (u, v) in enumerate(self.base_edges):
            if d.has_arc(v, u):
                counter |= 1 << b
            elif not d.has_arc(u, v):
                raise ValueError(f"edge {u}-{v} is not oriented")
        return counter


def orientations(universe: OrientationUniverse) -> Iterator[Digraph]:
    """Every orientation, in counter order."""
    if universe.m > MAX_STREAM_EDGES:
        raise UniverseTooLargeError(f"2^{universe.m} orientations exceeds the 2^{MAX_STREAM_EDGES} limit")
    for counter in range(universe.size):
        yield universe.orientation(counter)


def tournaments(n: int) -> Iterator[Digraph]:
    if not 2 <= n <= 7:
        raise ValueError(f"tournament order must be in 2..7, got {n}")
    return orientations(OrientationUniverse.tournament(n))


# --------------------------------------------------------------------------
# predicates and censuses


@dataclass(frozen=True)
class Predicate:
    """Filter on (orientation, competition graph).

    ``triangle_free`` declares that passing implies a triangle-free
    competition graph; only then may the indegree prune be used.
    ``graph_test`` sees the competition graph alone, ``test`` sees both.
    """

    name: str
    triangle_free: bool = False
    graph_test: Optional[Callable[[Graph], bool]] = None
    test: Optional[Callable[[Digraph, Graph], bool]] = None

    def accepts(self, d: Digraph, c: Graph) -> bool:
        if self.triangle_free and has_triangle(c):
            return False
        if self.graph_test is not None and not self.graph_test(c):
            return False
        return self.test is None or self.test(d, c)

    def where(self, name: str, test: Callable[[Digraph, Graph], bool]) -> Predicate:
        """Conjunction with an extra orientation-level test."""
        prev = self.test
        combined = test if prev is None else (lambda d, c: prev(d, c) and test(d, c))
        return Predicate(f"{self.name}&{name}", self.triangle_free, self.graph_test, combined)


ALL = Predicate("all")
TRIANGLE_FREE = Predicate("triangle-free", triangle_free=True)
TF_CONNECTED = Predicate("triangle-free-connected", True, is_connected)
TF_DISCONNECTED = Predicate("triangle-free-disconnected", True, lambda g: not is_connected(g))

FILTERS = {p.name: p for p in (ALL, TRIANGLE_FREE, TF_CONNECTED, TF_DISCONNECTED)}


def graph_predicate(name: str, target: Graph) -> Predicate:
    """Competition graph isomorphic to ``target`` (triangle-free targets only)."""
    form = canonical_form(target)
    return Predicate(name, not has_triangle(target), lambda g: g.n == target.n and canonical_form(g) == form)


@dataclass
class Census:
    """Histogram of competition-graph isomorphism classes."""

    filter: str
    universe_size: int
    counts: dict[CanonicalForm, int] = field(default_factory=dict)
    graphs: dict[CanonicalForm, Graph] = field(default_factory=dict)
    first: dict[CanonicalForm, tuple[int, Digraph]] = field(default_factory=dict)

    def add(self, form: CanonicalForm, graph: Graph, counter: int, d: Digraph, count: int = 1) -> None:
        self.counts[form] = self.counts.get(form, 0) + count
        if form not in self.graphs:
            self.graphs[form] = graph
        if form not in self.first or counter < self.first[form][0]:
            self.first[form] = (counter, d)

    def merge(self, other: Census) -> Census:
        out = Census(self.filter, self.universe_size, dict(self.counts), dict(self.graphs), dict(self.first))
        for form, count in other.counts.items():
            counter, d = other.first[form]
            out.add(form, other.graphs[form], counter, d, count)
        return out

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def keys(self) -> set[CanonicalForm]:
        return set(self.counts)

    def example(self, form: CanonicalForm) -> Digraph:
        return self.first[form][1]

    def same_classes(self, other: Census) -> bool:
        return self.counts == other.counts


# --------------------------------------------------------------------------
# unpruned route: vectorised sweep over counter ranges


def out_mask_batch(universe: OrientationUniverse, lo: int, hi: int) -> np.ndarray:
    """Out-neighbour masks, shape (n, hi - lo), for counters lo..hi-1."""
    counters = np.arange(lo, hi, dtype=np.uint64)
    masks = np.zeros((universe.n, hi - lo), dtype=np.uint64)
    for b, (u, v) in enumerate(universe.base_edges):
        flipped = ((counters >> np.uint64(b)) & np.uint64(1)).astype(bool)
        masks[u] |= np.where(flipped, np.uint64(0), np.uint64(1 << v))
        masks[v] |= np.where(flipped, np.uint64(1 << u), np.uint64(0))
    return masks


def competition_rows_batch(masks: np.ndarray) -> np.ndarray:
    """Competition-graph adjacency masks, same layout as ``masks``."""
    n = masks.shape[0]
    rows = np.zeros_like(masks)
    for u, v in combinations(range(n), 2):
        hit = (masks[u] & masks[v]) != 0
        rows[u] |= np.where(hit, np.uint64(1 << v), np.uint64(0))
        rows[v] |= np.where(hit, np.uint64(1 << u), np.uint64(0))
    return rows


def triangle_free_batch(rows: np.ndarray) -> np.ndarray:
    n = rows.shape[0]
    free = np.ones(rows.shape[1], dtype=bool)
    for u, v, w in combinations(range(n), 3):
        uv = (rows[u] >> np.uint64(v)) & np.uint64(1)
        uw = (rows[u] >> np.uint64(w)) & np.uint64(1)
        vw = (rows[v] >> np.uint64(w)) & np.uint64(1)
        free &= (uv & uw & vw) == 0
    return free


def _digraph_at(masks: np.ndarray, j: int) -> Digraph:
    return Digraph(masks.shape[0], tuple(int(x) for x in masks[:, j]))


def _sweep(universe: OrientationUniverse, predicate: Predicate, lo: int, hi: int) -> Census:
    census = Census(predicate.name, universe.size)
    for start in range(lo, hi, CHUNK):
        stop = min(hi, start + CHUNK)
        masks = out_mask_batch(universe, start, stop)
        rows = competition_rows_batch(masks)
        keep = triangle_free_batch(rows) if predicate.triangle_free else np.ones(stop - start, dtype=bool)
        idx = np.nonzero(keep)[0]
        if idx.size == 0:
            continue
        if predicate.test is None:
            # graph-only predicate: evaluate once per distinct competition graph
            uniq, first, counts = np.unique(rows[:, idx], axis=1, return_index=True, return_counts=True)
            for col in np.argsort(first, kind="stable"):
                g = Graph(universe.n, tuple(int(x) for x in uniq[:, col]))
                if predicate.graph_test is not None and not predicate.graph_test(g):
                    continue
                j = int(idx[first[col]])
                census.add(canonical_form(g), g, start + j, _digraph_at(masks, j), int(counts[col]))
        else:
            for j in idx:
                j = int(j)
                d = _digraph_at(masks, j)
                g = Graph(universe.n, tuple(int(x) for x in rows[:, j]))
                if predicate.graph_test is not None and not predicate.graph_test(g):
                    continue
                if predicate.test(d, g):
                    census.add(canonical_form(g), g, start + j, d)
    return census


# --------------------------------------------------------------------------
# pruned route: depth-first assignment with an indegree cap of two


def pruned_orientations(universe: OrientationUniverse, prefix: Sequence[int] = ()) -> Iterator[tuple[int, Digraph]]:
    """(counter, orientation) for every orientation with all indegrees <= 2.

    Edges are decided from the highest index down, so counters come out in
    increasing order. ``prefix`` fixes the bits of the top edges.
    """
    n, m, edges = universe.n, universe.m, universe.base_edges
    if m > 2 * n:
        return
    indeg = [0] * n
    out = [0] * n

    def place(tail: int, head: int) -> bool:
        if indeg[head] >= 2:
            return False
        indeg[head] += 1
        out[tail] |= 1 << head
        return True

    def unplace(tail: int, head: int) -> None:
        indeg[head] -= 1
        out[tail] &= ~(1 << head)

    counter = 0
    for i, bit in enumerate(prefix):
        b = m - 1 - i
        u, v = edges[b]
        if not (place(v, u) if bit else place(u, v)):
            return
        counter |= bit << b

    def walk(b: int, counter: int) -> Iterator[tuple[int, Digraph]]:
        if b < 0:
            yield counter, Digraph(n, tuple(out))
            return
        u, v = edges[b]
        if place(u, v):
            yield from walk(b - 1, counter)
            unplace(u, v)
        if place(v, u):
            yield from walk(b - 1, counter | (1 << b))
            unplace(v, u)

    yield from walk(m - 1 - len(prefix), counter)


def _walk_census(universe: OrientationUniverse, predicate: Predicate, prefix: Sequence[int]) -> Census:
    census = Census(predicate.name, universe.size)
    for counter, d in pruned_orientations(universe, prefix):
        g = competition_graph(d)
        if predicate.accepts(d, g):
            census.add(canonical_form(g), g, counter, d)
    return census


# --------------------------------------------------------------------------
# work splitting

_TASK: dict = {}


def _run_task(i: int) -> Census:
    return _TASK["fn"](*_TASK["args"][i])


def _fan_out(fn, arglist: list[tuple], jobs: int) -> list[Census]:
    if jobs <= 1 or len(arglist) <= 1:
        return [fn(*a) for a in arglist]
    _TASK.update(fn=fn, args=arglist)
    try:
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
            return list(pool.map(_run_task, range(len(arglist))))
    finally:
        _TASK.clear()


def default_jobs() -> int:
    return os.cpu_count() or 1


def search(
    universe: OrientationUniverse,
    predicate: Predicate = TRIANGLE_FREE,
    prune: str = "none",
    jobs: int = 1,
    check_prune: bool = False,
) -> Census:
    """Census of competition graphs of the orientations accepted by ``predicate``.

    The result does not depend on ``jobs``: subtrees are merged in counter order.
    With ``check_prune`` a pruned search is repeated unpruned on universes of
    at most 2^16 orientations and must agree.
    """
    if universe.m > MAX_STREAM_EDGES:
        raise UniverseTooLargeError(f"2^{universe.m} orientations exceeds the 2^{MAX_STREAM_EDGES} limit")
    if prune == "none":
        pieces = max(1, jobs)
        bounds = [universe.size * i // pieces for i in range(pieces + 1)]
        parts = _fan_out(_sweep, [(universe, predicate, bounds[i], bounds[i + 1]) for i in range(pieces)], jobs)
    elif prune == "indegree_le_2":
        if not predicate.triangle_free:
            raise UnsoundPruneError(f"predicate {predicate.name!r} does not imply a triangle-free competition graph")
        depth = min(universe.m, math.ceil(math.log2(jobs))) if jobs > 1 else 0
        prefixes = [tuple(p >> (depth - 1 - i) & 1 for i in range(depth)) for p in range(1 << depth)]
        parts = _fan_out(_walk_census, [(universe, predicate, p) for p in prefixes], jobs)
    else:
        raise ValueError(f"unknown prune mode {prune!r}")
    census = Census(predicate.name, universe.size)
    for part in parts:
        census = census.merge(part)
    if check_prune and prune != "none" and universe.m <= 16:
        reference = search(universe, predicate, "none")
        if not reference.same_classes(census):
            raise UnsoundPruneError(f"pruned census differs from the full sweep on {universe.shape}")
    return census


def find_first(universe: OrientationUniverse, predicate: Predicate) -> Optional[tuple[int, Digraph]]:
    """Lowest-counter orientation accepted by ``predicate``, or None."""
    if predicate.triangle_free:
        candidates: Iterator[tuple[int, Digraph]] = pruned_orientations(universe)
    else:
        candidates = ((c, universe.orientation(c)) for c in range(universe.size))
    for counter, d in candidates:
        if predicate.accepts(d, competition_graph(d)):
            return counter, d
    return None


def shapes_with(k: int, order: int) -> list[PartiteShape]:
    """All k-part shapes on exactly ``order`` vertices, largest parts first."""
    out: list[PartiteShape] = []

    def rec(left: int, parts: int, cap: int, acc: tuple[int, ...]) -> None:
        if parts == 0:
            if left == 0:
                out.append(PartiteShape(acc))
            return
        for s in range(min(cap, left - (parts - 1)), 0, -1):
            rec(left - s, parts - 1, s, acc + (s,))

    if 1 <= k <= order:
        rec(order, k, order, ())
    return out


def shapes_up_to(k: int, max_order: int) -> list[PartiteShape]:
    return [s for order in range(k, max_order + 1) for s in shapes_with(k, order)]
