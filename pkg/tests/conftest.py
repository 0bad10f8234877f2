import random

import pytest
from hypothesis import strategies as st

from compgraphs.graphs import Digraph, Graph

ACCEPTANCE_LINES: list[str] = []


@st.composite
def digraphs(draw, min_n=1, max_n=10, density=None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    if density is None:
        chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    else:
        seed = draw(st.integers(0, 2**32 - 1))
        rng = random.Random(seed)
        chosen = [p for p in pairs if rng.random() < density]
    return Digraph.from_arcs(n, chosen)


@st.composite
def graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def permutations(draw, n):
    return draw(st.permutations(list(range(n))))


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
