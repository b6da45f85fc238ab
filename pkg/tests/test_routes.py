from itertools import combinations

import pytest
from hypothesis import given, settings

from flowpoly.graphs import corpus_graph, extend
from flowpoly.routes import (
    ConflictKind,
    Route,
    coherence_graph,
    coherent_by_definition,
    conflict,
    cw_cmp,
    cw_of,
    enumerate_routes,
    framing_less,
    indicator_vector,
    parse_route,
)

from .conftest import ALL, bipartite_graphs


@pytest.fixture
def G32():
    return extend(corpus_graph("K32"))


def test_route_counts(G32):
    assert len(enumerate_routes(G32)) == 24
    assert len(enumerate_routes(extend(corpus_graph("K22")))) == 16
    routes = enumerate_routes(G32)
    assert routes == sorted(routes)


def test_indicator_vector_of_route(G32):
    vec = indicator_vector(G32, Route(2, 5, 2, 2))
    assert len(vec) == 16 and sum(vec) == 3
    ones = {G32.edges[k].id for k, x in enumerate(vec) if x}
    assert ones == {"a2_2", "b_2_5", "g_5_2"}


def test_route_token_round_trip(G32):
    for R in enumerate_routes(G32):
        assert parse_route(R.token) == R
    assert Route(3, 5, 1, 2).token == "a1_3 b_3_5 g_5_2"
    with pytest.raises(ValueError):
        parse_route("a1_3 b_2_5 g_5_2")


def test_framing_examples(G32):
    assert framing_less(G32, 1, G32.beta(1, 4), G32.beta(1, 5))
    assert framing_less(G32, 4, G32.gamma(4, 1), G32.gamma(4, 2))
    assert framing_less(G32, 4, G32.beta(1, 4), G32.beta(3, 4))
    assert framing_less(G32, 2, G32.alpha(1, 2), G32.alpha(2, 2))
    assert not framing_less(G32, 1, G32.beta(1, 5), G32.beta(1, 4))


def test_framing_incomparable(G32):
    with pytest.raises(ValueError):
        framing_less(G32, 1, G32.alpha(1, 1), G32.beta(1, 4))
    with pytest.raises(ValueError):
        framing_less(G32, 1, G32.beta(2, 4), G32.beta(2, 5))


def test_coherence_example():
    assert conflict(Route(1, 5, 2, 2), Route(1, 5, 1, 1)) is None
    c = conflict(Route(1, 5, 2, 1), Route(1, 5, 1, 2))
    assert c.kind is ConflictKind.BETA and c.where == (1, 5)


def test_source_side_conflict():
    for b1 in (1, 2):
        for b2 in (1, 2):
            c = conflict(Route(1, 5, 1, b1), Route(1, 4, 2, b2))
            assert c.kind is ConflictKind.SOURCE_SIDE and c.where == (1,)


def test_sink_side_conflict():
    c = conflict(Route(1, 4, 1, 2), Route(3, 4, 2, 1))
    assert c.kind is ConflictKind.SINK_SIDE and c.where == (4,)
    assert conflict(Route(1, 4, 1, 1), Route(3, 4, 2, 2)) is None


def test_disjoint_routes_coherent():
    assert conflict(Route(1, 4, 1, 2), Route(2, 5, 2, 1)) is None


def test_cw_on_beta_cross():
    assert cw_of(Route(1, 4, 1, 2), Route(1, 4, 2, 1))
    assert cw_cmp(Route(1, 4, 1, 2), Route(1, 4, 2, 1)) == 1
    with pytest.raises(ValueError):
        cw_of(Route(1, 4, 1, 1), Route(1, 4, 2, 2))


def test_cw_in_k22():
    # the two routes share the beta edge 1-4 and conflict at both ends of it
    R1, R2 = Route(1, 4, 1, 2), Route(1, 4, 2, 1)
    assert coherent_by_definition(extend(corpus_graph("K22")), R1, R2) is False
    assert cw_of(R1, R2) and not cw_of(R2, R1)


def test_four_routes_on_a_beta_edge_have_one_conflict(G32):
    for i, j in G32.base.edges:
        four = [Route(i, j, a, b) for a in (1, 2) for b in (1, 2)]
        bad = [(R, S) for R, S in combinations(four, 2) if conflict(R, S)]
        assert bad == [(Route(i, j, 1, 2), Route(i, j, 2, 1))]


def test_coherence_graph_k32(G32):
    adj = coherence_graph(G32)
    assert len(adj) == 24
    beta_cross = [
        (R, S) for R, S in combinations(adj, 2)
        if S not in adj[R] and conflict(R, S).kind is ConflictKind.BETA
    ]
    assert len(beta_cross) == 6


def test_k22_conflict_count_golden():
    # 20 conflicting pairs, frozen from an exhaustive scan with the
    # general prefix/suffix definition
    G = extend(corpus_graph("K22"))
    routes = enumerate_routes(G)
    assert sum(1 for R, S in combinations(routes, 2) if not coherent_by_definition(G, R, S)) == 20
    assert sum(1 for R, S in combinations(routes, 2) if conflict(R, S)) == 20


@pytest.mark.parametrize("name", ALL)
def test_specialized_rule_matches_definition(name):
    G = extend(corpus_graph(name))
    for R, S in combinations(enumerate_routes(G), 2):
        assert (conflict(R, S) is None) == coherent_by_definition(G, R, S)


@pytest.mark.parametrize("name", ["K32", "C8"])
def test_conflict_symmetric_and_cw_antisymmetric(name):
    routes = enumerate_routes(extend(corpus_graph(name)))
    for R, S in combinations(routes, 2):
        c = conflict(R, S)
        assert c == conflict(S, R)
        if c is not None:
            assert cw_of(R, S) != cw_of(S, R)
            assert cw_cmp(R, S) == -cw_cmp(S, R)


@settings(max_examples=20, deadline=None)
@given(bipartite_graphs())
def test_specialized_rule_matches_definition_random(H):
    G = extend(H)
    for R, S in combinations(enumerate_routes(G), 2):
        assert (conflict(R, S) is None) == coherent_by_definition(G, R, S)
