import pytest
from hypothesis import given, settings

from compgraphs.canonical import are_isomorphic
from compgraphs.classifier import (
    NotTriangleFreeError,
    OrderTooSmallError,
    admissible_shapes,
    classify,
    member,
    synth_witness,
)
from compgraphs.enumeration import PartiteShape
from compgraphs.graphs import Graph, competition_graph, has_triangle, is_connected, is_multipartite_tournament
from compgraphs.patterns import GraphPattern, build_pattern, cycle, named_graph, path, star

from conftest import graphs


def pattern(*parts, iso=0):
    return build_pattern(GraphPattern.exact(parts, iso), iso)


@pytest.mark.parametrize(
    "g,expected",
    [
        (cycle(5), [5]),
        (cycle(6), [3]),
        (path(5), [4]),
        (named_graph("G2"), [3, 4]),
        (pattern("P3", "P2"), [3, 4]),
        (Graph.empty(2), [2]),
        (pattern("C4", "C4"), [2]),
        (path(6), [3]),
        (star(3), [4]),
        (cycle(4), []),
        (Graph.empty(3), [2, 3]),
        (pattern("P3", iso=1), [3, 4]),
        (pattern("P3", iso=2), [2, 3]),
        (pattern("P3", iso=3), [3]),
        (pattern("P2", "P3"), [3, 4]),
        (pattern("P2", "P3", iso=3), [2, 3]),
    ],
)
def test_classify_examples(g, expected):
    assert classify(g).members() == expected


def test_rejections():
    with pytest.raises(NotTriangleFreeError):
        classify(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]))
    with pytest.raises(OrderTooSmallError):
        classify(Graph.empty(1))
    with pytest.raises(ValueError):
        member(path(3), 1)


def test_member_examples():
    v = member(path(6), 3)
    assert v.member and v.family == "P6"
    assert sorted(v.part_of.count(p) for p in set(v.part_of)) == [1, 2, 3]
    assert not member(path(6), 4).member
    v = member(pattern("P2", "P2", "P2", "P2"), 2)
    assert v.member and v.source == "D14"


def test_witness_is_exactly_aligned():
    g = pattern("P2", "P3", iso=2)
    for k in (2, 3):
        v = member(g, k)
        assert competition_graph(v.witness) == g
        assert is_multipartite_tournament(v.witness, v.part_of) and len(set(v.part_of)) == k


def test_synth_witness_examples():
    d, shape = synth_witness(star(3), 4)
    assert shape == PartiteShape.of(1, 1, 1, 1)
    assert are_isomorphic(competition_graph(d), star(3)) is not None
    d, shape = synth_witness(Graph.empty(3), 3)
    assert shape == PartiteShape.of(1, 1, 1) and sorted(d.arcs()) != [] and d.arc_count() == 3
    d, shape = synth_witness(pattern("P4", iso=1), 3)
    assert shape.sizes[1:] == (1, 1)
    for parts in [("P3", "P3"), ("P4", "P3"), ("P3", "P2", "P2")]:
        d, shape = synth_witness(pattern(*parts), 2)
        assert are_isomorphic(competition_graph(d), pattern(*parts)) is not None


def test_admissible_shapes():
    assert PartiteShape.of(4, 2, 1) not in admissible_shapes(3, 7)
    assert admissible_shapes(5, 5) == [PartiteShape.of(1, 1, 1, 1, 1)]
    assert admissible_shapes(6, 6) == []
    assert PartiteShape.of(4, 4) in admissible_shapes(2, 8)


@settings(max_examples=150, deadline=None)
@given(graphs(min_n=2, max_n=9))
def test_classify_invariants(g):
    if has_triangle(g):
        with pytest.raises(NotTriangleFreeError):
            classify(g)
        return
    report = classify(g)
    assert set(report.verdicts) == {2, 3, 4, 5, 6}
    assert not report.verdicts[6].member
    allowed = {3, 4, 5} if is_connected(g) else {2, 3, 4}
    assert set(report.members()) <= allowed
    for k, v in report.verdicts.items():
        if v.member:
            assert competition_graph(v.witness) == g
            assert is_multipartite_tournament(v.witness, v.part_of)
            assert len(set(v.part_of)) == k
