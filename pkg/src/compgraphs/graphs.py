"""Bitset graphs and digraphs, and the competition-graph operator.

Vertices are the integers ``0..n-1``; each vertex stores its neighbours
(or out-neighbours) as an int bitmask. Everything here is immutable.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class GraphSizeError(ValueError):
    """Raised for vertex counts outside ``1..MAX_VERTICES``."""


def _check_order(n: int) -> None:
    if not 1 <= n <= MAX_VERTICES:
        raise GraphSizeError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``adj[v]`` is the neighbour bitmask of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_order(self.n)
        if len(self.adj) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric on {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        _check_order(n)
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> Graph:
        _check_order(n)
        return cls(n, (0,) * n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(row) for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def complement(self) -> Graph:
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Subgraph induced on ``vertices``, relabelled in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[w]) for u in vertices for w in bits(self.adj[u]) if w in index and index[u] < index[w]]
        return Graph.from_edges(len(vertices), edges)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Image under the vertex map ``v -> perm[v]``."""
        adj = [0] * self.n
        for v, row in enumerate(self.adj):
            adj[perm[v]] = sum(1 << perm[u] for u in bits(row))
        return Graph(self.n, tuple(adj))

    def disjoint_union(self, other: Graph) -> Graph:
        shift = self.n
        return Graph(self.n + other.n, self.adj + tuple(row << shift for row in other.adj))


@dataclass(frozen=True)
class Digraph:
    """Loop-free digraph; ``out[v]`` is the out-neighbour bitmask of ``v``."""

    n: int
    out: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_order(self.n)
        if len(self.out) != self.n:
            raise ValueError(f"expected {self.n} out-rows, got {len(self.out)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.out):
            if row & ~full:
                raise ValueError(f"vertex {v} has an out-neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
        _check_order(n)
        out = [0] * n
        for u, v in arcs:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u},{v}) out of range for n={n}")
            out[u] |= 1 << v
        return cls(n, tuple(out))

    @property
    def inn(self) -> tuple[int, ...]:
        """In-neighbour bitmasks."""
        rows = [0] * self.n
        for u, row in enumerate(self.out):
            for v in bits(row):
                rows[v] |= 1 << u
        return tuple(rows)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.out[u])]

    def arc_count(self) -> int:
        return sum(popcount(row) for row in self.out)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def has_two_cycle(self) -> bool:
        return any(self.out[v] >> u & 1 for u in range(self.n) for v in bits(self.out[u]))

    def relabel(self, perm: Sequence[int]) -> Digraph:
        out = [0] * self.n
        for v, row in enumerate(self.out):
            out[perm[v]] = sum(1 << perm[u] for u in bits(row))
        return Digraph(self.n, tuple(out))

    def reverse(self) -> Digraph:
        return Digraph(self.n, self.inn)

    def remove_arcs(self, arcs: Iterable[tuple[int, int]]) -> Digraph:
        out = list(self.out)
        for u, v in arcs:
            out[u] &= ~(1 << v)
        return Digraph(self.n, tuple(out))

    def induced(self, vertices: Sequence[int]) -> Digraph:
        index = {v: i for i, v in enumerate(vertices)}
        arcs = [(index[u], index[w]) for u in vertices for w in bits(self.out[u]) if w in index]
        return Digraph.from_arcs(len(vertices), arcs)


def competition_graph(d: Digraph) -> Graph:
    """Graph on V(d) joining u != v whenever they share an out-neighbour."""
    adj = [0] * d.n
    # each in-neighbourhood is a clique of the competition graph
    for prey in d.inn:
        for u in bits(prey):
            adj[u] |= prey
    return Graph(d.n, tuple(row & ~(1 << v) for v, row in enumerate(adj)))


def underlying_graph(d: Digraph) -> Graph:
    adj = list(d.out)
    for u, row in enumerate(d.out):
        for v in bits(row):
            adj[v] |= 1 << u
    return Graph(d.n, tuple(adj))


def degree_profile(d: Digraph) -> tuple[list[int], list[int]]:
    """(indegrees, outdegrees) indexed by vertex."""
    return [popcount(r) for r in d.inn], [popcount(r) for r in d.out]


def has_triangle(g: Graph) -> bool:
    for u in range(g.n):
        higher = g.adj[u] >> (u + 1) << (u + 1)
        for v in bits(higher):
            if g.adj[v] & higher & ~((1 << (v + 1)) - 1):
                return True
    return False


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components, ordered by smallest vertex."""
    seen = 0
    out = []
    for start in range(g.n):
        if seen >> start & 1:
            continue
        comp = frontier = 1 << start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(frozenset(bits(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def isolated_vertices(g: Graph) -> list[int]:
    return [v for v, row in enumerate(g.adj) if not row]


def is_tournament(d: Digraph) -> bool:
    return is_multipartite_tournament(d, list(range(d.n)))


def is_multipartite_tournament(d: Digraph, part_of: Sequence[int]) -> bool:
    """True iff ``d`` orients exactly the complete multipartite graph on ``part_of``."""
    if len(part_of) != d.n or len(set(part_of)) < 2:
        return False
    for u, v in combinations(range(d.n), 2):
        forward, backward = d.has_arc(u, v), d.has_arc(v, u)
        if part_of[u] == part_of[v]:
            if forward or backward:
                return False
        elif forward == backward:
            return False
    return True
