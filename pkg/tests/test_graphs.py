import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compgraphs.enumeration import OrientationUniverse, PartiteShape, orientations
from compgraphs.families import build_witness
from compgraphs.graphs import (
    MAX_VERTICES,
    Digraph,
    Graph,
    GraphSizeError,
    competition_graph,
    components,
    degree_profile,
    has_triangle,
    is_connected,
    is_multipartite_tournament,
    isolated_vertices,
    underlying_graph,
)
from compgraphs.patterns import build_pattern, cycle, GraphPattern, path

from conftest import digraphs, graphs


def slow_competition(d: Digraph) -> set:
    edges = set()
    for u in range(d.n):
        for v in range(u + 1, d.n):
            for w in range(d.n):
                if d.has_arc(u, w) and d.has_arc(v, w):
                    edges.add((u, v))
    return edges


def test_graph_invariants_enforced():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0b00))
    with pytest.raises(ValueError):
        Graph(2, (0b01, 0b00))
    with pytest.raises(ValueError):
        Graph(2, (0b100, 0b000))
    with pytest.raises(GraphSizeError):
        Graph.empty(MAX_VERTICES + 1)
    with pytest.raises(ValueError):
        Digraph.from_arcs(3, [(1, 1)])


def test_figure1_competition_is_c6():
    w = build_witness("C6")
    c = competition_graph(w.digraph)
    assert c.degrees() == [2] * 6 and is_connected(c)
    assert underlying_graph(w.digraph) == OrientationUniverse(PartiteShape.of(2, 2, 2)).base


def test_competition_small_cases():
    d = Digraph.from_arcs(3, [(0, 2), (1, 2)])
    assert competition_graph(d).edges() == [(0, 1)]
    assert isolated_vertices(competition_graph(d)) == [2]
    assert competition_graph(Digraph.from_arcs(4, [])) == Graph.empty(4)


def test_competition_matches_triple_loop_oracle():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 10)
        d = Digraph.from_arcs(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.3])
        assert set(competition_graph(d).edges()) == slow_competition(d)


@given(digraphs(max_n=10))
def test_competition_edge_count_property(d):
    c = competition_graph(d)
    pairs = sum(1 for u, v in combinations(range(d.n), 2) if d.out[u] & d.out[v])
    assert c.edge_count() == pairs


def test_underlying_graph_of_orientations():
    u = OrientationUniverse(PartiteShape.of(2, 2, 1))
    assert all(underlying_graph(d) == u.base for d in orientations(u))
    assert underlying_graph(Digraph.from_arcs(3, [])) == Graph.empty(3)


def test_degree_profiles():
    indeg, outdeg = degree_profile(build_witness("REG5").digraph)
    assert indeg == [2] * 5 and outdeg == [2] * 5
    assert degree_profile(Digraph.from_arcs(4, [])) == ([0] * 4, [0] * 4)
    u = OrientationUniverse(PartiteShape.of(3, 2, 1))
    for c in range(0, u.size, 97):
        indeg, outdeg = degree_profile(u.orientation(c))
        assert sum(indeg) == sum(outdeg) == 11


def test_has_triangle():
    assert not has_triangle(cycle(6))
    assert has_triangle(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]))


def test_components():
    g = build_pattern(GraphPattern.exact(("P3", "P2")), 0)
    assert sorted(len(c) for c in components(g)) == [2, 3]
    assert [len(c) for c in components(Graph.empty(3))] == [1, 1, 1]
    c = competition_graph(build_witness("D25", 2).digraph)
    assert sorted(len(x) for x in components(c)) == [1, 1, 2, 3]


@given(digraphs(max_n=8, density=0.4), st.integers(0, 2**32 - 1))
def test_subdigraph_monotonicity(d, seed):
    rng = random.Random(seed)
    sub = d.remove_arcs(a for a in d.arcs() if rng.random() < 0.5)
    big, small = competition_graph(d), competition_graph(sub)
    assert set(small.edges()) <= set(big.edges())


@settings(max_examples=50)
@given(digraphs(max_n=9, density=0.25))
def test_edge_bound_on_triangle_free(d):
    c = competition_graph(d)
    if not has_triangle(c):
        indeg, _ = degree_profile(d)
        assert max(indeg, default=0) <= 2
        assert 2 * c.edge_count() <= d.arc_count() <= 2 * d.n


def test_relabel_and_union(rng):
    g = path(4)
    perm = list(range(4))
    rng.shuffle(perm)
    h = g.relabel(perm)
    assert h.edge_count() == 3
    assert g.disjoint_union(Graph.empty(2)).n == 6


def test_multipartite_tournament_check():
    u = OrientationUniverse(PartiteShape.of(2, 1))
    d = u.orientation(0)
    assert is_multipartite_tournament(d, u.partition.part_of)
    assert not is_multipartite_tournament(d, [0, 1, 2])


@given(graphs(max_n=8))
def test_complement_involution(g):
    assert g.complement().complement() == g
