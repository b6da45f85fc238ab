from __future__ import annotations

from functools import lru_cache
from itertools import product

import pytest
from hypothesis import strategies as st

from flowpoly.cliques import enumerate_clique_vectors, make_vector, phi
from flowpoly.graphs import CORPUS, BipartiteGraph, GraphError, corpus_graph, extend, whisker

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@lru_cache(maxsize=None)
def instance(name: str):
    """(H, G, W, clique vectors, phi images) for a corpus graph, cached."""
    H = corpus_graph(name)
    vectors = list(enumerate_clique_vectors(H))
    return H, extend(H), whisker(H), vectors, [phi(H, a) for a in vectors]


@pytest.fixture
def k32():
    return corpus_graph("K32")


@pytest.fixture
def k22():
    return corpus_graph("K22")


@pytest.fixture
def vec_minus(k32):
    return make_vector(k32, (4, 5, 4, 1, 3, "-", "-", "-", "-", "-", "-"))


@pytest.fixture
def vec_plus(k32):
    return make_vector(k32, (4, 5, 4, 1, 3, "+", "-", "-", "-", "-", "-"))


SMALL = ["K22", "K23", "K32", "C6", "K33-M"]
ALL = list(CORPUS)


# Independent brute-force oracles.


def brute_clique_vector_count(H: BipartiteGraph) -> int:
    """Sum over neighbor choices of 2^(#edges chosen from both ends)."""
    total = 0
    for choice in product(*(H.neighbors(v) for v in H.vertices)):
        mutual = sum(1 for i, j in H.edges if choice[i - 1] == j and choice[j - 1] == i)
        total += 2 ** mutual
    return total


def brute_matching_counts(edges) -> list[int]:
    """Matching sizes by scanning every edge subset."""
    edges = list(edges)
    counts = [0] * (len(edges) + 1)
    for mask in range(1 << len(edges)):
        chosen = [e for k, e in enumerate(edges) if mask >> k & 1]
        ends = [x for e in chosen for x in e]
        if len(ends) == len(set(ends)):
            counts[len(chosen)] += 1
    while counts[-1] == 0:
        counts.pop()
    return counts


@st.composite
def bipartite_graphs(draw, max_side: int = 3):
    """Connected bipartite graphs with minimum degree 2 on small shores."""
    n = draw(st.integers(2, max_side))
    m = draw(st.integers(2, max_side))
    pairs = [(i, n + j) for i in range(1, n + 1) for j in range(1, m + 1)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = tuple(e for e, k in zip(pairs, keep) if k)
    try:
        return BipartiteGraph(n, m, edges)
    except GraphError:
        # fall back to the complete graph so the draw is never wasted
        return BipartiteGraph(n, m, tuple(pairs))
