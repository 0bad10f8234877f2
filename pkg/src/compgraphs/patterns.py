"""Component-level graph patterns: build named unions and recognise them back."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .canonical import canonical_form
from .graphs import Graph, components

_PART = re.compile(r"^(P|C)(\d+)$|^K1,3$|^G([1-4])$")


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("paths need n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# Fig. 2 trees: G1 = K_{1,4}; G2 = chair; G3 = spider with legs 2,2,1;
# G4 = P_5 with a pendant on its fourth vertex.
NAMED_EDGES = {
    "G1": (5, [(0, 1), (0, 2), (0, 3), (0, 4)]),
    "G2": (5, [(0, 1), (1, 2), (0, 3), (0, 4)]),
    "G3": (6, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5)]),
    "G4": (6, [(0, 1), (1, 2), (0, 3), (3, 4), (3, 5)]),
}


def named_graph(name: str) -> Graph:
    if name not in NAMED_EDGES:
        raise KeyError(f"unknown named graph {name!r}")
    n, edges = NAMED_EDGES[name]
    return Graph.from_edges(n, edges)


def component_graph(part: str) -> Graph:
    m = _PART.match(part)
    if not m:
        raise ValueError(f"unrecognised component {part!r}")
    if m.group(1) == "P":
        return path(int(m.group(2)))
    if m.group(1) == "C":
        return cycle(int(m.group(2)))
    if part == "K1,3":
        return star(3)
    return named_graph(part)


def _sort_key(part: str) -> tuple[int, int, str]:
    kinds = {"P": 0, "C": 1, "K": 2, "G": 3}
    digits = re.findall(r"\d+", part)
    return kinds[part[0]], int(digits[0]) if part[0] in "PC" else 0, part


@dataclass(frozen=True, eq=False)
class GraphPattern:
    """Multiset of non-trivial components plus a range of isolated vertices.

    ``max_isolated`` of None means "at least ``min_isolated``". ``parts``
    keeps declaration order (it fixes the vertex layout of build_pattern);
    equality ignores it.
    """

    parts: tuple[str, ...]
    min_isolated: int = 0
    max_isolated: Optional[int] = 0

    def __post_init__(self) -> None:
        for p in self.parts:
            component_graph(p)
            if p == "P1":
                raise ValueError("isolated vertices are counted, not listed as P1")
        object.__setattr__(self, "parts", tuple(self.parts))
        if self.min_isolated < 0 or (self.max_isolated is not None and self.max_isolated < self.min_isolated):
            raise ValueError("bad isolated-vertex range")

    @property
    def multiset(self) -> tuple[str, ...]:
        return tuple(sorted(self.parts, key=_sort_key))

    def _key(self) -> tuple:
        return self.multiset, self.min_isolated, self.max_isolated

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GraphPattern) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    @classmethod
    def exact(cls, parts: tuple[str, ...], isolated: int = 0) -> GraphPattern:
        return cls(tuple(parts), isolated, isolated)

    @classmethod
    def at_least(cls, parts: tuple[str, ...], isolated: int) -> GraphPattern:
        return cls(tuple(parts), isolated, None)

    def allows(self, isolated: int) -> bool:
        return isolated >= self.min_isolated and (self.max_isolated is None or isolated <= self.max_isolated)

    def core_order(self) -> int:
        return sum(component_graph(p).n for p in self.parts)

    def label(self, isolated: Optional[int] = None) -> str:
        bits = list(self.multiset)
        if isolated is not None:
            if isolated:
                bits.append(f"I{isolated}")
        elif self.max_isolated is None:
            bits.append(f"I(>={self.min_isolated})")
        elif self.max_isolated:
            bits.append(f"I{self.max_isolated}")
        return " u ".join(bits) if bits else "empty"


class PatternError(ValueError):
    pass


def build_pattern(p: GraphPattern, isolated: int) -> Graph:
    """Disjoint union in declaration order, isolated vertices last."""
    if not p.allows(isolated):
        raise PatternError(f"{isolated} isolated vertices not allowed by {p.label()}")
    g: Optional[Graph] = None
    for part in p.parts:
        h = component_graph(part)
        g = h if g is None else g.disjoint_union(h)
    if isolated:
        e = Graph.empty(isolated)
        g = e if g is None else g.disjoint_union(e)
    if g is None:
        raise PatternError("pattern describes the graph with no vertices")
    return g


@lru_cache(maxsize=None)
def _named_forms() -> dict:
    return {canonical_form(named_graph(name)): name for name in NAMED_EDGES}


def classify_component(h: Graph) -> Optional[str]:
    """Name of a connected graph on >= 2 vertices, or None if outside the alphabet."""
    degs = h.degrees()
    e = h.edge_count()
    if e == h.n - 1 and max(degs) <= 2:
        return f"P{h.n}"
    if e == h.n and all(d == 2 for d in degs):
        return f"C{h.n}"
    if h.n == 4 and sorted(degs) == [1, 1, 1, 3]:
        return "K1,3"
    return _named_forms().get(canonical_form(h))


def match_pattern(g: Graph) -> Optional[tuple[GraphPattern, int]]:
    """Inverse of build_pattern over the alphabet {P_n, C_n, K_{1,3}, G1..G4}."""
    parts = []
    isolated = 0
    for comp in components(g):
        if len(comp) == 1:
            isolated += 1
            continue
        name = classify_component(g.induced(sorted(comp)))
        if name is None:
            return None
        parts.append(name)
    return GraphPattern.exact(tuple(parts), isolated), isolated


def describe(g: Graph) -> str:
    """Pattern label such as ``P2 u P3 u I1`` when recognised, else ``graph6:...``."""
    matched = match_pattern(g)
    if matched is None:
        from .formats import to_graph6
        return "graph6:" + to_graph6(g)
    pattern, isolated = matched
    return pattern.label(isolated)
