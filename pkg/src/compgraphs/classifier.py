"""Decide for which k a triangle-free graph is C(D) of a k-partite tournament.

Membership is read off pattern tables, one per k, keyed on the multiset of
components and the number of isolated vertices. Witnesses come from the
families module; the three bipartite items without a drawn construction are
found by search over the admissible shapes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .canonical import CanonicalForm, are_isomorphic, canonical_form
from .enumeration import OrientationUniverse, PartiteShape, find_first, graph_predicate, shapes_with
from .families import build_witness
from .graphs import Digraph, Graph, competition_graph, has_triangle, is_connected, is_multipartite_tournament
from .patterns import GraphPattern, match_pattern

K_RANGE = range(2, 7)


class NotTriangleFreeError(ValueError):
    pass


class OrderTooSmallError(ValueError):
    pass


class SynthesisExhaustedError(RuntimeError):
    """No admissible orientation realises a graph the theorems say is realisable."""


# a witness source: family id and parameter, or None to synthesise
Source = Optional[tuple[str, Optional[int]]]


@dataclass(frozen=True)
class Item:
    label: str
    pattern: GraphPattern
    source: Union[Source, Callable[[int], Source]]

    def resolve(self, isolated: int) -> Source:
        return self.source(isolated) if callable(self.source) else self.source


def _fixed(family: str) -> Source:
    return (family, None)


exact, at_least = GraphPattern.exact, GraphPattern.at_least

CONNECTED: dict[int, list[Item]] = {
    3: [
        Item("G1", exact(("G1",)), _fixed("D1")),
        Item("G2", exact(("G2",)), _fixed("D2")),
        Item("G3", exact(("G3",)), _fixed("D3")),
        Item("G4", exact(("G4",)), _fixed("D4")),
        Item("P6", exact(("P6",)), _fixed("P6")),
        Item("C6", exact(("C6",)), _fixed("C6")),
    ],
    4: [
        Item("P5", exact(("P5",)), _fixed("D6")),
        Item("K1,3", exact(("K1,3",)), _fixed("D5")),
        Item("G2", exact(("G2",)), _fixed("D7")),
    ],
    5: [Item("C5", exact(("C5",)), _fixed("REG5"))],
}

DISCONNECTED: dict[int, list[Item]] = {
    2: [
        Item("(a) empty, order >= 2", at_least((), 2), lambda j: ("D8", j - 1)),
        Item("(b) P2 u I(>=1)", at_least(("P2",), 1), lambda j: ("D9", j)),
        Item("(c) P2 u P2 u I(>=1)", at_least(("P2", "P2"), 1), lambda j: ("D10", j)),
        Item("(d) P2 u P3 u I(>=1)", at_least(("P3", "P2"), 1), lambda j: ("D11", j)),
        Item("(e) P2 u P2 u P2 u I(>=1)", at_least(("P2", "P2", "P2"), 1), lambda j: ("D12", j)),
        Item("(f) P3 u I2", exact(("P3",), 2), _fixed("D13")),
        Item("(g) P3 u P3", exact(("P3", "P3")), None),
        Item("(h) P3 u P4", exact(("P4", "P3")), None),
        Item("(i) P2 u P2 u P3", exact(("P3", "P2", "P2")), None),
        Item("(j) C4 u C4", exact(("C4", "C4")), _fixed("C4C4")),
        Item("(k) P2 u P2 u P2 u P2", exact(("P2",) * 4), _fixed("D14")),
    ],
    3: [
        Item("(a) empty, order 3", exact((), 3), _fixed("D17")),
        Item("(b) P2 u I(>=1)", at_least(("P2",), 1), lambda j: ("D18", j)),
        Item("(c) P3 u I(>=1)", at_least(("P3",), 1), lambda j: ("D19", j)),
        Item("(d) P4 u I(>=1)", at_least(("P4",), 1), lambda j: ("D20", j)),
        Item("(e) K1,3 u I1", exact(("K1,3",), 1), _fixed("D21")),
        Item("(f) K1,3 u P2", exact(("K1,3", "P2")), _fixed("D22")),
        Item("(g) P2 u P4", exact(("P2", "P4")), _fixed("D23")),
        Item("(h) P2 u P2 u I(>=1)", at_least(("P2", "P2"), 1), lambda j: ("D24", j)),
        Item("(i) P2 u P3 u I(>=0)", at_least(("P2", "P3"), 0), lambda j: ("D25", j) if j else ("D26", None)),
        Item("(j) P2 u P2 u P2", exact(("P2",) * 3), _fixed("D27")),
    ],
    4: [
        Item("P2 u P3", exact(("P3", "P2")), _fixed("D15")),
        Item("P3 u I1", exact(("P3",), 1), _fixed("D16")),
    ],
}


@dataclass(frozen=True)
class Verdict:
    member: bool
    family: Optional[str] = None
    witness: Optional[Digraph] = None
    part_of: Optional[tuple[int, ...]] = None
    source: Optional[str] = None


@dataclass
class ClassificationReport:
    input_canonical: CanonicalForm
    triangle_free: bool
    order: int
    connected: bool
    verdicts: dict[int, Verdict] = field(default_factory=dict)

    def members(self) -> list[int]:
        return [k for k, v in sorted(self.verdicts.items()) if v.member]


def _check_input(g: Graph) -> None:
    if g.n < 2:
        raise OrderTooSmallError("a multipartite tournament has at least two vertices")
    if has_triangle(g):
        raise NotTriangleFreeError("input graph contains a triangle")


def matching_item(g: Graph, k: int) -> Optional[tuple[Item, int]]:
    """The table item for k that g falls under, with its isolated-vertex count."""
    matched = match_pattern(g)
    if matched is None:
        return None
    pattern, isolated = matched
    table = CONNECTED if is_connected(g) else DISCONNECTED
    for item in table.get(k, []):
        if item.pattern.multiset == pattern.multiset and item.pattern.allows(isolated):
            return item, isolated
    return None


def admissible_shapes(k: int, order: int) -> list[PartiteShape]:
    """Shapes on ``order`` vertices not excluded by the partite-size lemmas."""
    def ok(s: tuple[int, ...]) -> bool:
        if k == 2:
            return s[1] <= 2 or (s[1] == 3 and s[0] <= 6) or s == (4, 4)
        if k == 3:
            return s == (2, 2, 2) or (s[0] <= 3 and s[1:] == (2, 1)) or s[1:] == (1, 1)
        if k == 4:
            return s[0] <= 2 and s[1:] == (1, 1, 1)
        if k == 5:
            return s == (1, 1, 1, 1, 1)
        return False

    return [s for s in shapes_with(k, order) if ok(s.sizes)]


def synth_witness(g: Graph, k: int) -> tuple[Digraph, PartiteShape]:
    """First orientation (shape order, then counter order) whose C is isomorphic to g."""
    predicate = graph_predicate(f"iso-{canonical_form(g).hex()}", g)
    for shape in admissible_shapes(k, g.n):
        found = find_first(OrientationUniverse(shape), predicate)
        if found is not None:
            return found[1], shape
    raise SynthesisExhaustedError(f"no admissible {k}-partite orientation realises the graph")


def _aligned(g: Graph, d: Digraph, part_of: tuple[int, ...], k: int) -> tuple[Digraph, tuple[int, ...]]:
    """Relabel d so that C(d) == g exactly, and check it is a k-partite tournament."""
    mapping = are_isomorphic(competition_graph(d), g)
    if mapping is None:
        raise AssertionError("witness does not realise the input graph")
    d2 = d.relabel(mapping)
    parts = [0] * d.n
    for v, p in enumerate(part_of):
        parts[mapping[v]] = p
    if competition_graph(d2) != g or len(set(parts)) != k or not is_multipartite_tournament(d2, parts):
        raise AssertionError("witness failed validation")
    return d2, tuple(parts)


def member(g: Graph, k: int) -> Verdict:
    _check_input(g)
    if k < 2:
        raise ValueError("k must be at least 2")
    hit = matching_item(g, k)
    if hit is None:
        return Verdict(False)
    item, isolated = hit
    src = item.resolve(isolated)
    if src is None:
        d, shape = synth_witness(g, k)
        part_of = OrientationUniverse(shape).partition.part_of
        origin = f"search over K{shape}"
    else:
        w = build_witness(*src)
        d, part_of = w.digraph, w.partition.part_of
        origin = src[0] if src[1] is None else f"{src[0]}(k={src[1]})"
    d, part_of = _aligned(g, d, part_of, k)
    return Verdict(True, item.label, d, part_of, origin)


def classify(g: Graph) -> ClassificationReport:
    _check_input(g)
    report = ClassificationReport(canonical_form(g), True, g.n, is_connected(g))
    for k in K_RANGE:
        report.verdicts[k] = member(g, k)
    return report
