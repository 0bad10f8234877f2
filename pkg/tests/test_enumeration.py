import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compgraphs.canonical import canonical_form
from compgraphs.enumeration import (
    ALL,
    TF_CONNECTED,
    TRIANGLE_FREE,
    OrientationUniverse,
    PartiteShape,
    UniverseTooLargeError,
    UnsoundPruneError,
    complete_multipartite,
    find_first,
    graph_predicate,
    orientations,
    search,
    shapes_up_to,
    tournaments,
)
from compgraphs.graphs import competition_graph, has_triangle, underlying_graph
from compgraphs.patterns import cycle, describe, named_graph

# triangle-free censuses frozen from the first full run, keyed by pattern label
GOLDEN = {
    "1,1": {"I2": 2},
    "2,1": {"I3": 3, "P2 u I1": 1},
    "3,1": {"I4": 4, "P2 u I2": 3},
    "2,2": {"I4": 2, "P2 u I2": 14},
    "3,2": {"P2 u I3": 22, "P2 u P2 u I1": 21, "P3 u I2": 6},
    "3,3": {"P2 u P2 u I2": 18, "P2 u P3 u I1": 108, "P3 u P3": 36},
    "4,3": {"P2 u P2 u P2 u I1": 18, "P2 u P2 u P3": 90, "P3 u P4": 72},
    "4,4": {"C4 u C4": 72, "P2 u P2 u P2 u P2": 18},
    "1,1,1": {"I3": 2, "P2 u I1": 6},
    "2,1,1": {"P2 u I2": 12, "P3 u I1": 12},
    "2,2,1": {"G1": 2, "G2": 8, "K1,3 u I1": 8, "P2 u P2 u I1": 6, "P2 u P3": 20, "P4 u I1": 24},
    "3,2,1": {"G3": 12, "G4": 12, "P2 u K1,3": 6, "P2 u P2 u P2": 3, "P2 u P4": 18, "P6": 12},
    "2,2,2": {"C6": 24, "P2 u P2 u P2": 2},
    "3,1,1": {"P2 u I3": 8, "P2 u P2 u I1": 12, "P3 u I2": 24, "P4 u I1": 12},
    "1,1,1,1": {"K1,3": 8, "P3 u I1": 24},
    "2,1,1,1": {"G2": 12, "P2 u P3": 6, "P5": 24},
    "1,1,1,1,1": {"C5": 24},
}


def labelled(census):
    return {describe(census.graphs[f]): n for f, n in census.counts.items()}


def test_shape_normalisation():
    s = PartiteShape.of(1, 2, 2)
    assert s.sizes == (2, 2, 1) and s.k == 3 and s.order == 5 and str(s) == "(2,2,1)"
    assert PartiteShape.parse("2,2,1") == s
    with pytest.raises(ValueError):
        PartiteShape.of(2, 0)


@pytest.mark.parametrize("sizes,edges", [((4, 2, 1), 14), ((2, 2, 1), 8), ((1, 1), 1)])
def test_complete_multipartite_edges(sizes, edges):
    g, part = complete_multipartite(PartiteShape.of(*sizes))
    assert g.edge_count() == edges == PartiteShape.of(*sizes).edge_count
    assert list(part.part_of) == sorted(part.part_of)
    for u, v in g.edges():
        assert part.part_of[u] != part.part_of[v]


def test_stream_lengths():
    assert sum(1 for _ in orientations(OrientationUniverse.of(2, 2, 1))) == 256
    two = list(orientations(OrientationUniverse.of(1, 1)))
    assert [d.arcs() for d in two] == [[(0, 1)], [(1, 0)]]
    u = OrientationUniverse.of(2, 2, 2)
    ds = list(orientations(u))
    assert len(ds) == 4096 and all(underlying_graph(d) == u.base for d in ds)


@pytest.mark.parametrize("sizes", [s.sizes for k in (2, 3, 4) for s in shapes_up_to(k, 6) if s.edge_count <= 12])
def test_stream_completeness(sizes):
    u = OrientationUniverse(PartiteShape(sizes))
    ds = list(orientations(u))
    assert len(set(ds)) == len(ds) == 1 << u.m
    for c in (0, u.size // 3, u.size - 1):
        assert u.counter_of(ds[c]) == c
        assert not ds[c].has_two_cycle()


def test_counter_bit_zero_orients_from_lower_endpoint():
    u = OrientationUniverse.of(2, 1)
    u0, v0 = u.base_edges[0]
    assert u0 < v0 and u.orientation(0).has_arc(u0, v0) and u.orientation(1).has_arc(v0, u0)
    assert list(u.base_edges) == sorted(u.base_edges)


def test_tournaments():
    assert sum(1 for _ in tournaments(3)) == 8
    assert sum(1 for _ in tournaments(5)) == 1024
    with pytest.raises(ValueError):
        list(tournaments(8))
    with pytest.raises(ValueError):
        list(tournaments(1))


def test_six_tournaments_all_have_triangles():
    c = search(OrientationUniverse.tournament(6), TRIANGLE_FREE)
    assert c.universe_size == 32768 and not c.counts


def test_universe_limit():
    with pytest.raises(UniverseTooLargeError):
        list(orientations(OrientationUniverse.of(6, 6)))
    with pytest.raises(UniverseTooLargeError):
        search(OrientationUniverse.of(6, 6), TRIANGLE_FREE)


def test_k421_census_empty():
    c = search(OrientationUniverse.of(4, 2, 1), TRIANGLE_FREE)
    assert c.universe_size == 16384 and c.total == 0


def test_connected_k221_census():
    c = search(OrientationUniverse.of(2, 2, 1), TF_CONNECTED)
    assert c.keys() == {canonical_form(named_graph("G1")), canonical_form(named_graph("G2"))}


def test_c6_predicate_nonempty():
    c = search(OrientationUniverse.of(2, 2, 2), graph_predicate("C6", cycle(6)))
    assert c.total == 24


def test_prune_requires_triangle_free_predicate():
    with pytest.raises(UnsoundPruneError):
        search(OrientationUniverse.of(2, 1), ALL, prune="indegree_le_2")


@pytest.mark.parametrize("sizes", [s.sizes for k in range(2, 6) for s in shapes_up_to(k, 9) if s.edge_count <= 14])
def test_prune_soundness(sizes):
    u = OrientationUniverse(PartiteShape(sizes))
    full = search(u, TRIANGLE_FREE, prune="none")
    pruned = search(u, TRIANGLE_FREE, prune="indegree_le_2")
    assert full.counts == pruned.counts
    assert {f: full.first[f][0] for f in full.counts} == {f: pruned.first[f][0] for f in pruned.counts}


def test_check_prune_flag_runs():
    assert search(OrientationUniverse.of(3, 2, 1), TRIANGLE_FREE, prune="indegree_le_2", check_prune=True).total == 63


@pytest.mark.parametrize("shape", sorted(GOLDEN))
def test_golden_censuses(shape):
    c = search(OrientationUniverse(PartiteShape.parse(shape)), TRIANGLE_FREE, prune="indegree_le_2")
    assert labelled(c) == GOLDEN[shape]


def test_all_filter_total_is_universe():
    for sizes in [(1, 1), (2, 2, 1), (2, 1, 1, 1)]:
        c = search(OrientationUniverse.of(*sizes), ALL)
        assert c.total == c.universe_size


@pytest.mark.parametrize("jobs", [2, 3])
@pytest.mark.parametrize("prune", ["none", "indegree_le_2"])
def test_parallel_merge_is_deterministic(jobs, prune):
    u = OrientationUniverse.of(3, 2, 1)
    serial = search(u, TRIANGLE_FREE, prune=prune)
    par = search(u, TRIANGLE_FREE, prune=prune, jobs=jobs)
    assert par.counts == serial.counts
    assert {f: par.first[f][0] for f in par.counts} == {f: serial.first[f][0] for f in serial.counts}


def test_census_stable_under_relabelling_equal_parts():
    u = OrientationUniverse.of(2, 2, 1)
    swap = [2, 3, 0, 1, 4]
    seen = {}
    for d in orientations(u):
        f = canonical_form(competition_graph(d))
        seen[f] = seen.get(f, 0) + 1
    swapped = {}
    for d in orientations(u):
        f = canonical_form(competition_graph(d.relabel(swap)))
        swapped[f] = swapped.get(f, 0) + 1
    assert seen == swapped


def test_find_first_lowest_counter():
    u = OrientationUniverse.of(2, 2, 2)
    counter, d = find_first(u, graph_predicate("C6", cycle(6)))
    assert u.counter_of(d) == counter
    for c in range(counter):
        g = competition_graph(u.orientation(c))
        assert has_triangle(g) or canonical_form(g) != canonical_form(cycle(6))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([s for s in shapes_up_to(3, 7) if s.edge_count <= 16]), st.integers(0, 2**16))
def test_pruned_walk_yields_sorted_capped_counters(shape, _):
    from compgraphs.enumeration import pruned_orientations

    u = OrientationUniverse(shape)
    counters = [c for c, d in pruned_orientations(u)]
    assert counters == sorted(counters)
    for c, d in pruned_orientations(u):
        assert d == u.orientation(c)
        assert max(bin(x).count("1") for x in d.inn) <= 2
        break
