import networkx as nx
import pytest
from hypothesis import given

from compgraphs.formats import (
    FormatError,
    from_digraph6,
    from_edge_list,
    from_graph6,
    parse_text,
    to_digraph6,
    to_dot,
    to_edge_list,
    to_graph6,
)
from compgraphs.graphs import Digraph, Graph
from compgraphs.patterns import cycle

from conftest import digraphs, graphs


@given(graphs(max_n=64))
def test_graph6_matches_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    ref = nx.to_graph6_bytes(h, header=False).decode().strip()
    assert to_graph6(g) == ref
    assert from_graph6(ref) == g


def test_graph6_large_n_header():
    g = Graph.empty(63)
    assert to_graph6(g)[:4] == "~??~"
    assert from_graph6(to_graph6(g)) == g
    assert from_graph6(">>graph6<<" + to_graph6(cycle(5))) == cycle(5)


def test_digraph6_hand_vector():
    d = Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
    # bits 010 001 100 -> 010001 100000 -> 'P', '_'
    assert to_digraph6(d) == "&BP_"
    assert from_digraph6("&BP_") == d


@given(digraphs(max_n=64, density=0.2))
def test_digraph6_round_trip(d):
    assert from_digraph6(to_digraph6(d)) == d
    assert parse_text(to_digraph6(d) + "\n") == d


@given(graphs(max_n=12))
def test_edge_list_round_trip_graph(g):
    assert parse_text(to_edge_list(g)) == g


@given(digraphs(max_n=12, density=0.3))
def test_edge_list_round_trip_digraph(d):
    assert parse_text(to_edge_list(d)) == d


def test_edge_list_comments_and_blank_lines():
    text = "# a 4-cycle\nn 4\n\n0 1\n1 2  # middle\n2 3\n3 0\n"
    assert from_edge_list(text) == cycle(4)


@pytest.mark.parametrize(
    "text,offset",
    [
        ("D?!", 2),
        ("\n  D?!", 5),
        ("n 3\n0 5\n", 4),
        ("&B?", 3),
        ("m 3\n", 1),
        ("n 3\n0 1\n1 -> 2\n", 8),
        ("A_ extra", 2),
        ("", 0),
    ],
)
def test_parse_errors_name_offsets(text, offset):
    with pytest.raises(FormatError) as info:
        parse_text(text)
    assert info.value.offset == offset
    assert str(info.value).startswith(f"byte {offset}:")


def test_dot_output():
    d = Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
    text = to_dot(d, [0, 1, 2])
    assert text.startswith("digraph G {") and text.rstrip().endswith("}")
    assert text.count("{") == text.count("}")
    assert text.count("rank=same") == 3
    assert "0 -> 1;" in text
    assert "0 -- 1;" in to_dot(cycle(3))
