"""Exhaustive re-verification of the structural results over finite universes.

Every check enumerates its universe, evaluates a property on each member and
returns a report. Unbounded statements are checked up to an explicit vertex
cap that is recorded in the report.
"""
from __future__ import annotations

import json
import multiprocessing
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from .canonical import CanonicalForm, canonical_form
from .classifier import CONNECTED, DISCONNECTED, Item
from .enumeration import (
    FILTERS,
    Census,
    OrientationUniverse,
    PartiteShape,
    Predicate,
    UniverseTooLargeError,
    competition_rows_batch,
    out_mask_batch,
    pruned_orientations,
    search,
    shapes_up_to,
    tournaments,
)
from .families import FAMILY_IDS, build_witness, is_parameterised
from .formats import to_digraph6
from .graphs import (
    Digraph,
    Graph,
    competition_graph,
    components,
    degree_profile,
    has_triangle,
    is_connected,
    isolated_vertices,
)
from .patterns import GraphPattern, build_pattern, cycle, describe, path

MAX_COUNTEREXAMPLES = 10
BIPARTITE_CAP = 9
TRIPARTITE_CAP = 8
PROPERTY_MAX_EDGES = 16
RANDOM_SEED = 20240611


class UnknownCheckError(KeyError):
    pass


@dataclass(frozen=True)
class Counterexample:
    description: str
    digraph: Optional[Digraph] = None

    def to_dict(self) -> dict:
        return {"description": self.description, "digraph6": to_digraph6(self.digraph) if self.digraph else None}


@dataclass
class Outcome:
    universe: str
    size: int
    counterexamples: list[Counterexample] = field(default_factory=list)
    census: Optional[Census] = None
    details: dict = field(default_factory=dict)

    def fail(self, description: str, d: Optional[Digraph] = None) -> None:
        self.counterexamples.append(Counterexample(description, d))


@dataclass
class VerificationReport:
    check_id: str
    universe: str
    universe_size: int
    passed: bool
    census: Optional[Census]
    counterexamples: list[Counterexample]
    details: dict
    elapsed: float

    def to_dict(self, with_elapsed: bool = True) -> dict:
        out = {
            "check_id": self.check_id,
            "universe": {"description": self.universe, "size": self.universe_size},
            "passed": self.passed,
            "census": census_rows(self.census) if self.census is not None else None,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
            "details": self.details,
        }
        if with_elapsed:
            out["elapsed"] = round(self.elapsed, 4)
        return out

    def serialize(self) -> str:
        """Stable text without the timing field."""
        return json.dumps(self.to_dict(with_elapsed=False), sort_keys=True)


@dataclass(frozen=True)
class Check:
    id: str
    description: str
    run: Callable[[], Outcome]


REGISTRY: dict[str, Check] = {}


def register(check_id: str, description: str):
    def wrap(fn: Callable[[], Outcome]) -> Callable[[], Outcome]:
        REGISTRY[check_id] = Check(check_id, description, fn)
        return fn

    return wrap


def census_rows(census: Census) -> list[dict]:
    rows = [
        {"canonical": f.hex(), "graph": describe(census.graphs[f]), "count": c}
        for f, c in census.counts.items()
    ]
    return sorted(rows, key=lambda r: (r["graph"], r["canonical"]))


# --------------------------------------------------------------------------
# shared universes and helpers


@lru_cache(maxsize=None)
def _census(shape: PartiteShape, filter_name: str) -> Census:
    predicate = FILTERS[filter_name]
    prune = "indegree_le_2" if predicate.triangle_free else "none"
    return search(OrientationUniverse(shape), predicate, prune=prune)


def census(shape: PartiteShape, filter_name: str) -> Census:
    """Competition-graph histogram of the orientations of K_shape passing the filter."""
    if filter_name not in FILTERS:
        raise ValueError(f"unknown filter {filter_name!r}; expected one of {sorted(FILTERS)}")
    if shape.edge_count > 30:
        raise UniverseTooLargeError(f"K{shape} has 2^{shape.edge_count} orientations")
    return _census(shape, filter_name)


def _union(shapes: Iterable[PartiteShape], filter_name: str) -> tuple[Census, int]:
    total = Census(filter_name, 0)
    size = 0
    for s in shapes:
        c = census(s, filter_name)
        total = total.merge(c)
        size += c.universe_size
    total.universe_size = size
    return total, size


def _forms(graphs: Iterable[Graph]) -> dict[CanonicalForm, str]:
    return {canonical_form(g): describe(g) for g in graphs}


def _compare_sets(out: Outcome, found: Census, expected: dict[CanonicalForm, str]) -> None:
    for f in sorted(found.keys() - expected.keys()):
        out.fail(f"unexpected class {describe(found.graphs[f])}", found.example(f))
    for f in sorted(expected.keys() - found.keys()):
        out.fail(f"expected class {expected[f]} never occurs")


def _shape_list(shapes: Iterable[PartiteShape]) -> str:
    return ", ".join(str(s) for s in shapes)


def _orientation_count(shapes: Iterable[PartiteShape]) -> int:
    return sum(1 << s.edge_count for s in shapes)


TRIPARTITE_SHAPES = [PartiteShape.of(2, 2, 2), PartiteShape.of(3, 2, 1), PartiteShape.of(2, 2, 1)] + [
    PartiteShape.of(m, 1, 1) for m in range(1, 7)
]
FOUR_SHAPES = [PartiteShape.of(1, 1, 1, 1), PartiteShape.of(2, 1, 1, 1)]


def property_shapes() -> list[PartiteShape]:
    """All shapes with at least two parts and at most 2^16 orientations."""
    return [
        s
        for k in range(2, 7)
        for s in shapes_up_to(k, PROPERTY_MAX_EDGES + 1)
        if s.edge_count <= PROPERTY_MAX_EDGES
    ]


def _enumerable(shapes: Iterable[PartiteShape], out: Outcome) -> list[PartiteShape]:
    """Drop shapes past the streaming limit; they all have more than 2n edges,
    so the edge bound already rules out a triangle-free competition graph."""
    keep, skipped = [], []
    for s in shapes:
        if s.edge_count <= 30:
            keep.append(s)
        else:
            assert s.edge_count > 2 * s.order
            skipped.append(str(s))
    if skipped:
        out.details.setdefault("skipped_by_edge_bound", []).extend(skipped)
    return keep


def _triangle_free_orientations(shapes: Iterable[PartiteShape]) -> Iterator[tuple[OrientationUniverse, Digraph, Graph]]:
    # a triangle-free competition graph forces indegree <= 2, so the pruned walk is complete
    for s in shapes:
        u = OrientationUniverse(s)
        for _, d in pruned_orientations(u):
            c = competition_graph(d)
            if not has_triangle(c):
                yield u, d, c


def _item_instances(items: list[Item], cap: int) -> dict[CanonicalForm, str]:
    """Every graph an item list describes with at most ``cap`` vertices."""
    out = {}
    for item in items:
        p = item.pattern
        top = cap - p.core_order() if p.max_isolated is None else p.max_isolated
        for j in range(p.min_isolated, top + 1):
            if p.core_order() + j >= 1 and p.core_order() + j <= cap:
                g = build_pattern(p, j)
                out[canonical_form(g)] = f"{item.label} with {j} isolated"
    return out


def _pattern_form(parts: tuple[str, ...], isolated: int = 0) -> tuple[CanonicalForm, str]:
    g = build_pattern(GraphPattern.exact(parts, isolated), isolated)
    return canonical_form(g), describe(g)


# --------------------------------------------------------------------------
# checks


@register("K421-impossible", "no orientation of K(4,2,1) has a triangle-free competition graph")
def _k421() -> Outcome:
    shape = PartiteShape.of(4, 2, 1)
    found = search(OrientationUniverse(shape), FILTERS["triangle-free"], prune="none")
    out = Outcome(f"all orientations of K{shape}", found.universe_size, census=found)
    for f in sorted(found.keys()):
        out.fail(f"triangle-free class {describe(found.graphs[f])}", found.example(f))
    return out


@register("isolated-vertex-lemma", "C(D) without isolated vertices forces two parts of size > 1")
def _isolated() -> Outcome:
    shapes = [PartiteShape.of(m, 1, 1) for m in range(1, 6)]
    pred = Predicate("no-isolated-vertex", graph_test=lambda g: not isolated_vertices(g))
    out = Outcome(f"all orientations of K{_shape_list(shapes)}", _orientation_count(shapes))
    for s in shapes:
        c = search(OrientationUniverse(s), pred)
        for f in sorted(c.keys()):
            out.fail(f"K{s}: {describe(c.graphs[f])} has no isolated vertex", c.example(f))
    return out


def _edge_bound_violation(d: Digraph) -> Optional[str]:
    c = competition_graph(d)
    if has_triangle(c):
        return None
    indeg, _ = degree_profile(d)
    twos = sum(1 for x in indeg if x == 2)
    e, a = c.edge_count(), d.arc_count()
    if max(indeg, default=0) > 2:
        return f"indegree {max(indeg)} with triangle-free C(D)"
    if not (e <= twos and 2 * e <= a <= 2 * d.n):
        return f"|E|={e}, #indegree-2={twos}, |A|={a}, |V|={d.n}"
    return None


@register("edge-bound", "triangle-free C(D) implies |E(C(D))| <= |A(D)|/2 <= |V(D)|")
def _edge_bound() -> Outcome:
    rng = random.Random(RANDOM_SEED)
    exhaustive = 0
    out = Outcome("", 0)
    for n in range(1, 5):
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        for mask in range(1 << len(pairs)):
            d = Digraph.from_arcs(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
            exhaustive += 1
            why = _edge_bound_violation(d)
            if why:
                out.fail(why, d)
    samples = 2000
    for _ in range(samples):
        n = rng.randint(5, 10)
        p = rng.choice([0.1, 0.2, 0.3])
        d = Digraph.from_arcs(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])
        why = _edge_bound_violation(d)
        if why:
            out.fail(why, d)
    shapes = property_shapes()
    orient = 0
    for _, d, _ in _triangle_free_orientations(shapes):
        orient += 1
        why = _edge_bound_violation(d)
        if why:
            out.fail(why, d)
    out.universe = (
        f"all {exhaustive} loop-free digraphs on <= 4 vertices, {samples} seeded random digraphs on 5..10 vertices, "
        f"triangle-free orientations of the {len(shapes)} shapes with <= {PROPERTY_MAX_EDGES} edges"
    )
    out.size = exhaustive + samples + orient
    out.details = {"seed": RANDOM_SEED, "triangle_free_orientations": orient}
    return out


def _tripartite_admissible(s: tuple[int, ...]) -> bool:
    return s == (2, 2, 2) or (s[0] <= 3 and s[1:] == (2, 1)) or s[1:] == (1, 1)


@register("tripartite-sizes", "tripartite shapes with a triangle-free C(D) are (2,2,2), (<=3,2,1) or (m,1,1)")
def _tri_sizes() -> Outcome:
    cap = 12
    out = Outcome(f"all tripartite shapes on <= {cap} vertices (pruned)", 0)
    shapes = _enumerable(shapes_up_to(3, cap), out)
    out.size = _orientation_count(shapes)
    realised = []
    for s in shapes:
        c = census(s, "triangle-free")
        if not c.counts:
            continue
        realised.append(str(s))
        if not _tripartite_admissible(s.sizes):
            f = min(c.keys())
            out.fail(f"K{s} has triangle-free class {describe(c.graphs[f])}", c.example(f))
        if s.sizes[1:] == (1, 1) and census(s, "triangle-free-connected").counts:
            out.fail(f"K{s} has a connected triangle-free competition graph")
    out.details.update(vertex_cap=cap, realised_shapes=realised)
    return out


@register("tripartite-order", "a connected triangle-free C(D) of a tripartite tournament has 5 or 6 vertices")
def _tri_order() -> Outcome:
    cap = 12
    out = Outcome(f"all tripartite shapes on <= {cap} vertices (pruned)", 0)
    found, out.size = _union(_enumerable(shapes_up_to(3, cap), out), "triangle-free-connected")
    out.census = found
    for f in sorted(found.keys()):
        if found.graphs[f].n not in (5, 6):
            out.fail(f"connected class {describe(found.graphs[f])} of order {found.graphs[f].n}", found.example(f))
    out.details["vertex_cap"] = cap
    return out


def _single_kind(found: Census, kind: str) -> dict[int, CanonicalForm]:
    """Classes of the census that are a single path (P_n, n >= 3) or cycle."""
    hits = {}
    for f, g in found.graphs.items():
        if not is_connected(g) or g.n < 3:
            continue
        label = describe(g)
        if label == f"{kind}{g.n}":
            hits[g.n] = f
    return hits


@register("cycle-tripartite", "C_n is C(D) of a tripartite tournament iff n = 6")
def _cycle_tri() -> Outcome:
    found, size = _union(TRIPARTITE_SHAPES, "triangle-free")
    out = Outcome(f"orientations of K{_shape_list(TRIPARTITE_SHAPES)}", size)
    hits = _single_kind(found, "C")
    for n, f in sorted(hits.items()):
        if n != 6:
            out.fail(f"C{n} occurs", found.example(f))
    if 6 not in hits:
        out.fail("C6 never occurs")
    out.details = {"cycles_found": sorted(hits)}
    return out


@register("path-tripartite", "P_n (n >= 3) is C(D) of a tripartite tournament iff n = 6")
def _path_tri() -> Outcome:
    found, size = _union(TRIPARTITE_SHAPES, "triangle-free")
    out = Outcome(f"orientations of K{_shape_list(TRIPARTITE_SHAPES)}", size)
    hits = _single_kind(found, "P")
    for n, f in sorted(hits.items()):
        if n != 6:
            out.fail(f"P{n} occurs", found.example(f))
    if 6 not in hits:
        out.fail("P6 never occurs")
    out.details = {"paths_found": sorted(hits)}
    return out


@register("K321-structure", "connected triangle-free orientations of K(3,2,1): no source, five distinct indegree-2 sets")
def _k321() -> Outcome:
    shape = PartiteShape.of(3, 2, 1)
    out = Outcome(f"connected triangle-free orientations of K{shape}", 1 << shape.edge_count)
    seen = 0
    for _, d, c in _triangle_free_orientations([shape]):
        if not is_connected(c):
            continue
        seen += 1
        indeg, _ = degree_profile(d)
        if 0 in indeg:
            out.fail("vertex of indegree 0", d)
        twos = [d.inn[v] for v in range(d.n) if indeg[v] == 2]
        if len(twos) != 5 or len(set(twos)) != 5:
            out.fail(f"{len(twos)} indegree-2 vertices, {len(set(twos))} distinct in-neighbourhoods", d)
    out.details = {"orientations_examined": seen}
    return out


CONNECTED_TRIPARTITE = ("G1", "G2", "G3", "G4", "P6", "C6")


@register("connected-tripartite-census", "connected triangle-free C(D) of tripartite tournaments: G1..G4, P6, C6")
def _conn_tri() -> Outcome:
    found, size = _union(TRIPARTITE_SHAPES, "triangle-free-connected")
    out = Outcome(f"orientations of K{_shape_list(TRIPARTITE_SHAPES)}", size, census=found)
    _compare_sets(out, found, dict(_pattern_form((p,)) for p in CONNECTED_TRIPARTITE))
    per_shape = {}
    for s in TRIPARTITE_SHAPES:
        c = census(s, "triangle-free-connected")
        per_shape[str(s)] = {describe(c.graphs[f]): n for f, n in sorted(c.counts.items())}
    out.details = {"per_shape": per_shape}
    return out


@register("subdigraph-monotonicity", "deleting arcs never adds competition edges")
def _monotone() -> Outcome:
    rng = random.Random(RANDOM_SEED + 1)
    out = Outcome("", 0)
    pairs_checked = 0

    def check(d: Digraph, sub: Digraph) -> None:
        big, small = competition_graph(d), competition_graph(sub)
        if any(small.adj[v] & ~big.adj[v] for v in range(d.n)):
            out.fail("competition edge created by deleting arcs", sub)

    for d in tournaments(4):
        arcs = d.arcs()
        for mask in range(1 << len(arcs)):
            check(d, d.remove_arcs(a for i, a in enumerate(arcs) if mask >> i & 1))
            pairs_checked += 1
    samples = 2000
    for _ in range(samples):
        n = rng.randint(2, 10)
        d = Digraph.from_arcs(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.35])
        arcs = d.arcs()
        check(d, d.remove_arcs(a for a in arcs if rng.random() < 0.5))
        pairs_checked += 1
    out.universe = f"every arc subset of every 4-tournament plus {samples} seeded random digraphs on <= 10 vertices"
    out.size = pairs_checked
    out.details = {"seed": RANDOM_SEED + 1}
    return out


@register("k6-forces-triangle", "every k-partite tournament with k >= 6 has a triangle in C(D)")
def _k6() -> Outcome:
    u = OrientationUniverse.tournament(6)
    found = search(u, FILTERS["triangle-free"], prune="none")
    wider = shapes_up_to(6, 8)
    out = Outcome(f"all 6-tournaments, plus 6-partite shapes {_shape_list(wider)} (pruned)", u.size + _orientation_count(wider))
    for f in sorted(found.keys()):
        out.fail(f"6-tournament with triangle-free {describe(found.graphs[f])}", found.example(f))
    for s in wider:
        c = census(s, "triangle-free")
        for f in sorted(c.keys()):
            out.fail(f"K{s} with triangle-free {describe(c.graphs[f])}", c.example(f))
    return out


@register("five-partite", "triangle-free C(D) of a 5-partite tournament: regular 5-tournament with C(D) = C5")
def _five() -> Outcome:
    c5 = canonical_form(cycle(5))
    out = Outcome("all 5-tournaments, plus orientations of K(2,1,1,1,1) (pruned)", 1024)
    regular = triangle_free = 0
    for d in tournaments(5):
        c = competition_graph(d)
        _, outdeg = degree_profile(d)
        is_regular = all(x == 2 for x in outdeg)
        regular += is_regular
        if has_triangle(c):
            if is_regular:
                out.fail("regular 5-tournament with a triangle", d)
            continue
        triangle_free += 1
        if not is_regular:
            out.fail("non-regular 5-tournament with triangle-free C(D)", d)
        if canonical_form(c) != c5:
            out.fail(f"triangle-free C(D) is {describe(c)}, not C5", d)
    wider = PartiteShape.of(2, 1, 1, 1, 1)
    out.size += 1 << wider.edge_count
    c = census(wider, "triangle-free")
    for f in sorted(c.keys()):
        out.fail(f"K{wider} with triangle-free {describe(c.graphs[f])}", c.example(f))
    out.details = {"regular": regular, "triangle_free": triangle_free}
    return out


@register("same-neighborhood", "equal out- or in-neighbourhoods (outdegree >= 1) force same part and a 2-vertex component")
def _same_nbhd() -> Outcome:
    shapes = property_shapes()
    out = Outcome(f"triangle-free orientations of the {len(shapes)} shapes with <= {PROPERTY_MAX_EDGES} edges", _orientation_count(shapes))
    pairs = 0
    for u, d, c in _triangle_free_orientations(shapes):
        part = u.partition.part_of
        inn = d.inn
        for a, b in combinations(range(d.n), 2):
            if not (d.out[a] and d.out[b]) or (d.out[a] != d.out[b] and inn[a] != inn[b]):
                continue
            pairs += 1
            if part[a] != part[b]:
                out.fail(f"vertices {a},{b} share a neighbourhood across parts", d)
            elif c.adj[a] != 1 << b or c.adj[b] != 1 << a:
                out.fail(f"vertices {a},{b} do not form a component of C(D)", d)
    out.details = {"pairs_examined": pairs}
    return out


@register("four-partite-sizes", "4-partite shapes with a triangle-free C(D): n1 <= 2 and n2 = n3 = n4 = 1")
def _four_sizes() -> Outcome:
    cap = 10
    out = Outcome(f"all 4-partite shapes on <= {cap} vertices (pruned)", 0)
    shapes = _enumerable(shapes_up_to(4, cap), out)
    out.size = _orientation_count(shapes)
    realised = []
    for s in shapes:
        c = census(s, "triangle-free")
        ok = s.sizes[0] <= 2 and s.sizes[1:] == (1, 1, 1)
        if c.counts:
            realised.append(str(s))
            if not ok:
                f = min(c.keys())
                out.fail(f"K{s} has triangle-free class {describe(c.graphs[f])}", c.example(f))
        elif ok:
            out.fail(f"K{s} has no triangle-free orientation")
    out.details.update(vertex_cap=cap, realised_shapes=realised)
    return out


@register("connected-4partite-census", "connected triangle-free C(D) of 4-partite tournaments: P5, K1,3, G2")
def _conn_four() -> Outcome:
    found, size = _union(FOUR_SHAPES, "triangle-free-connected")
    out = Outcome(f"orientations of K{_shape_list(FOUR_SHAPES)}", size, census=found)
    _compare_sets(out, found, dict(_pattern_form((p,)) for p in ("P5", "K1,3", "G2")))
    return out


@register("disconnected-4partite-census", "disconnected triangle-free C(D) of 4-partite tournaments: P3 u P2, P3 u I1")
def _disc_four() -> Outcome:
    found, size = _union(FOUR_SHAPES, "triangle-free-disconnected")
    out = Outcome(f"orientations of K{_shape_list(FOUR_SHAPES)}", size, census=found)
    _compare_sets(out, found, dict([_pattern_form(("P3", "P2")), _pattern_form(("P3",), 1)]))
    return out


@register("connected-theorem", "connected triangle-free C(D) of k-partite tournaments by k, all shapes on <= 8 vertices")
def _conn_theorem() -> Outcome:
    cap = 8
    out = Outcome(f"all shapes with 2..{cap} parts on <= {cap} vertices (pruned)", 0)
    per_k = {}
    for k in range(2, cap + 1):
        found, size = _union(shapes_up_to(k, cap), "triangle-free-connected")
        out.size += size
        expected = {canonical_form(build_pattern(i.pattern, 0)): i.label for i in CONNECTED.get(k, [])}
        _compare_sets(out, found, expected)
        per_k[str(k)] = sorted(describe(g) for g in found.graphs.values())
    out.details = {"vertex_cap": cap, "classes_by_k": per_k}
    return out


@register("bipartite-sizes", "bipartite shapes with n2 >= 3 and a triangle-free C(D): n2 = 3, n1 <= 6, or (4,4)")
def _bi_sizes() -> Outcome:
    cap = 14
    out = Outcome(f"bipartite shapes with n2 >= 3 on <= {cap} vertices (pruned)", 0)
    shapes = _enumerable([s for s in shapes_up_to(2, cap) if s.sizes[1] >= 3], out)
    out.size = _orientation_count(shapes)
    realised = []
    for s in shapes:
        c = census(s, "triangle-free")
        if not c.counts:
            continue
        realised.append(str(s))
        n1, n2 = s.sizes
        if not ((n2 == 3 and n1 <= 6) or s.sizes == (4, 4)):
            f = min(c.keys())
            out.fail(f"K{s} has triangle-free class {describe(c.graphs[f])}", c.example(f))
    out.details.update(vertex_cap=cap, realised_shapes=realised)
    return out


def _bounded_items(k: int, cap: int, filter_name: str, out: Outcome) -> Census:
    shapes = shapes_up_to(k, cap)
    found, size = _union(shapes, filter_name)
    out.size = size
    out.census = found
    expected = _item_instances(DISCONNECTED[k], cap)
    _compare_sets(out, found, expected)
    out.details = {"vertex_cap": cap, "instances_expected": len(expected), "classes_found": len(found.counts)}
    return found


@register("bipartite-census-bounded", "triangle-free C(D) of bipartite tournaments on <= 9 vertices match items (a)-(k)")
def _bi_bounded() -> Outcome:
    out = Outcome(f"all bipartite shapes on <= {BIPARTITE_CAP} vertices (pruned)", 0)
    _bounded_items(2, BIPARTITE_CAP, "triangle-free", out)
    return out


@register("disconnected-tripartite-census-bounded", "disconnected triangle-free C(D) of tripartite tournaments on <= 8 vertices match items (a)-(j)")
def _tri_bounded() -> Outcome:
    out = Outcome(f"all tripartite shapes on <= {TRIPARTITE_CAP} vertices (pruned)", 0)
    _bounded_items(3, TRIPARTITE_CAP, "triangle-free-disconnected", out)
    return out


@register("disconnected-k-range", "a disconnected triangle-free C(D) of a k-partite tournament with k >= 3 has k in {3,4}")
def _disc_range() -> Outcome:
    cap = 8
    out = Outcome(f"all shapes with 3..{cap} parts on <= {cap} vertices (pruned)", 0)
    realised = []
    for k in range(3, cap + 1):
        found, size = _union(shapes_up_to(k, cap), "triangle-free-disconnected")
        out.size += size
        if found.counts:
            realised.append(k)
        if k not in (3, 4):
            for f in sorted(found.keys()):
                out.fail(f"k={k}: disconnected {describe(found.graphs[f])}", found.example(f))
    out.details = {"vertex_cap": cap, "k_with_disconnected": realised}
    return out


@register("outdegree-bound", "triangle-free C(D) implies |V| - |X| - 2 <= outdegree(v) for v in part X")
def _outdeg() -> Outcome:
    shapes = property_shapes()
    out = Outcome(f"triangle-free orientations of the {len(shapes)} shapes with <= {PROPERTY_MAX_EDGES} edges", _orientation_count(shapes))
    for u, d, _ in _triangle_free_orientations(shapes):
        sizes = u.shape.sizes
        _, outdeg = degree_profile(d)
        for v, p in enumerate(u.partition.part_of):
            if outdeg[v] < d.n - sizes[p] - 2:
                out.fail(f"vertex {v}: outdegree {outdeg[v]} < {d.n - sizes[p] - 2}", d)
                break
    return out


@register("indegree1-count", "triangle-free C(D) implies #(indegree 1) <= 2|V| - |A|")
def _indeg1() -> Outcome:
    shapes = property_shapes()
    out = Outcome(f"triangle-free orientations of the {len(shapes)} shapes with <= {PROPERTY_MAX_EDGES} edges", _orientation_count(shapes))
    for _, d, _ in _triangle_free_orientations(shapes):
        indeg, _ = degree_profile(d)
        m = indeg.count(1)
        if m > 2 * d.n - d.arc_count():
            out.fail(f"{m} vertices of indegree 1 but 2|V|-|A| = {2 * d.n - d.arc_count()}", d)
    return out


@register("no-cross-edges", "C(D) of a bipartite orientation has no edge between the two parts")
def _no_cross() -> Outcome:
    shapes = [s for s in shapes_up_to(2, 15) if s.edge_count <= 14]
    out = Outcome(f"all orientations of the {len(shapes)} bipartite shapes with <= 14 edges", _orientation_count(shapes))
    for s in shapes:
        u = OrientationUniverse(s)
        part = u.partition.part_of
        other = np.array([sum(1 << w for w in range(u.n) if part[w] != part[v]) for v in range(u.n)], dtype=np.uint64)
        for lo in range(0, u.size, 1 << 16):
            hi = min(u.size, lo + (1 << 16))
            rows = competition_rows_batch(out_mask_batch(u, lo, hi))
            bad = np.nonzero(((rows & other[:, None]) != 0).any(axis=0))[0]
            for j in bad[:MAX_COUNTEREXAMPLES]:
                out.fail(f"K{s}: cross edge", u.orientation(lo + int(j)))
    return out


@register("fisher-min-edges", "min |E(C(T))| over n-tournaments is C(n,2) - n, n = 2..7")
def _fisher() -> Outcome:
    out = Outcome("all n-tournaments for n = 2..7 (vectorised)", sum(1 << comb(n, 2) for n in range(2, 8)))
    minima = {}
    for n in range(2, 8):
        u = OrientationUniverse.tournament(n)
        best = None
        arg = 0
        for lo in range(0, u.size, 1 << 16):
            hi = min(u.size, lo + (1 << 16))
            rows = competition_rows_batch(out_mask_batch(u, lo, hi))
            edges = np.bitwise_count(rows).sum(axis=0) // 2
            j = int(np.argmin(edges))
            if best is None or int(edges[j]) < best:
                best, arg = int(edges[j]), lo + j
        minima[str(n)] = best
        # n = 2 has C(2,2) - 2 = -1 < 0, so the bound is attained as 0 there
        want = max(0, comb(n, 2) - n)
        if best != want:
            out.fail(f"n={n}: minimum {best}, expected {want}", u.orientation(arg))
    out.details = {"minimum_edges": minima}
    return out


@register("fisher-no-path-complement", "the complement of C(T) is never a path on n >= 4 vertices, n = 4..6")
def _fisher_path() -> Outcome:
    out = Outcome("all n-tournaments for n = 4..6", sum(1 << comb(n, 2) for n in range(4, 7)))
    for n in range(4, 7):
        target = canonical_form(path(n))
        pred = Predicate(f"complement-P{n}", graph_test=lambda g, t=target: canonical_form(g.complement()) == t)
        found = search(OrientationUniverse.tournament(n), pred)
        for f in sorted(found.keys()):
            out.fail(f"n={n}: complement of C(T) is P{n}", found.example(f))
    return out


def _two_component_kinds(found: Census, kind: str) -> dict[tuple[int, int], CanonicalForm]:
    hits = {}
    for f, g in found.graphs.items():
        comps = components(g)
        if len(comps) != 2:
            continue
        sizes = []
        for comp in comps:
            h = g.induced(sorted(comp))
            if kind == "P" and (h.n == 1 or describe(h) == f"P{h.n}"):
                sizes.append(h.n)
            elif kind == "C" and h.n >= 3 and describe(h) == f"C{h.n}":
                sizes.append(h.n)
        if len(sizes) == 2:
            hits[tuple(sorted(sizes, reverse=True))] = f
    return hits


@register("kim-path-unions", "P_m u P_n is C(D) of a bipartite tournament iff (m,n) in {(1,1),(2,1),(3,3),(4,3)}")
def _kim_paths() -> Outcome:
    cap = 8
    found, size = _union(shapes_up_to(2, cap), "triangle-free")
    out = Outcome(f"all bipartite shapes on <= {cap} vertices (pruned)", size)
    hits = _two_component_kinds(found, "P")
    expected = {(1, 1), (2, 1), (3, 3), (4, 3)}
    for mn in sorted(set(hits) - expected):
        out.fail(f"P{mn[0]} u P{mn[1]} occurs", found.example(hits[mn]))
    for mn in sorted(expected - set(hits)):
        out.fail(f"P{mn[0]} u P{mn[1]} never occurs")
    out.details = {"vertex_cap": cap, "pairs_found": [list(p) for p in sorted(hits)]}
    return out


@register("kim-cycle-unions", "C_m u C_n is C(D) of a bipartite tournament iff (m,n) = (4,4)")
def _kim_cycles() -> Outcome:
    cap = 10
    found, size = _union(shapes_up_to(2, cap), "triangle-free")
    out = Outcome(f"all bipartite shapes on <= {cap} vertices (pruned)", size)
    hits = _two_component_kinds(found, "C")
    for mn in sorted(set(hits) - {(4, 4)}):
        out.fail(f"C{mn[0]} u C{mn[1]} occurs", found.example(hits[mn]))
    if (4, 4) not in hits:
        out.fail("C4 u C4 never occurs")
    out.details = {"vertex_cap": cap, "pairs_found": [list(p) for p in sorted(hits)]}
    return out


@register("witness-validation", "every witness family builds a multipartite tournament realising its target")
def _witnesses() -> Outcome:
    out = Outcome("families D1..D27, REG5, C6, P6, C4C4 with parameters 1..6 where parameterised", 0)
    built = 0
    for family in FAMILY_IDS:
        params = range(1, 7) if is_parameterised(family) else [None]
        for k in params:
            w = build_witness(family, k)
            built += 1
            target = build_pattern(w.spec.target, w.spec.isolated)
            if canonical_form(competition_graph(w.digraph)) != canonical_form(target):
                out.fail(f"{family}({k}) misses {w.spec.target.label()}", w.digraph)
            if w.repaired:
                out.details.setdefault("repaired", []).append(f"{family}({k})")
    out.size = built
    return out


# --------------------------------------------------------------------------
# running


def run_check(check_id: str) -> VerificationReport:
    if check_id not in REGISTRY:
        raise UnknownCheckError(check_id)
    start = time.perf_counter()
    outcome = REGISTRY[check_id].run()
    elapsed = time.perf_counter() - start
    return VerificationReport(
        check_id,
        outcome.universe,
        outcome.size,
        not outcome.counterexamples,
        outcome.census,
        outcome.counterexamples[:MAX_COUNTEREXAMPLES],
        outcome.details,
        elapsed,
    )


def run_all(parallel: bool = False, jobs: Optional[int] = None, ids: Optional[list[str]] = None) -> list[VerificationReport]:
    """Run registered checks in registry order; the list order never depends on scheduling."""
    ids = list(REGISTRY) if ids is None else ids
    for i in ids:
        if i not in REGISTRY:
            raise UnknownCheckError(i)
    if not parallel or len(ids) <= 1:
        return [run_check(i) for i in ids]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=jobs or None, mp_context=ctx) as pool:
        return list(pool.map(run_check, ids))
