import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flowpoly.cliques import CliqueVector, make_vector
from flowpoly.graphs import Leaf, corpus_graph, whisker
from flowpoly.matchings import (
    InvalidMatching,
    enumerate_matchings,
    matching_polynomial,
    matching_tokens,
    parse_edge_token,
    psi,
    psi_inverse,
)
from flowpoly.polynomial import Polynomial, is_log_concave, is_real_rooted, is_unimodal

from .conftest import ALL, SMALL, bipartite_graphs, brute_matching_counts, instance


def test_empty_matching_and_linear_term(k32):
    W = whisker(k32)
    ms = list(enumerate_matchings(W))
    assert frozenset() in ms
    assert sum(1 for M in ms if len(M) == 1) == 13


def test_k32_polynomial_golden(k32):
    # frozen from a scan over all 2^13 edge subsets
    W = whisker(k32)
    assert brute_matching_counts(W.graph().edges) == [1, 13, 49, 61, 28, 4]
    assert matching_polynomial(W) == Polynomial([1, 13, 49, 61, 28, 4])


def test_k22_polynomial_golden(k22):
    W = whisker(k22)
    assert brute_matching_counts(W.graph().edges) == [1, 8, 16, 8, 1]
    assert matching_polynomial(W) == Polynomial([1, 8, 16, 8, 1])


@pytest.mark.parametrize("name", SMALL)
def test_matching_count_equals_vector_count(name):
    H, _, W, vectors, _ = instance(name)
    ms = list(enumerate_matchings(W))
    assert len(ms) == len(set(ms)) == len(vectors)


def test_psi_examples(k32, vec_minus, vec_plus):
    assert matching_tokens(psi(k32, vec_minus)) == ["1-4", "w_2_5-2"]
    assert matching_tokens(psi(k32, vec_plus)) == ["w_2_5-2", "w_4_1-4"]


def test_psi_leaves_vertex_three_uncovered(k32, vec_minus):
    M = psi(k32, vec_minus)
    assert all(3 not in e for e in M)
    assert all(5 not in e for e in M)


def test_psi_inverse_examples(k32, vec_minus, vec_plus):
    M = frozenset({(1, 4), (2, Leaf(2, 5))})
    assert psi_inverse(k32, M) == vec_minus
    M2 = frozenset({(2, Leaf(2, 5)), (4, Leaf(4, 1))})
    assert psi_inverse(k32, M2) == vec_plus


def test_psi_inverse_empty(k32):
    a = psi_inverse(k32, frozenset())
    assert a.choice == (4, 4, 4, 3, 3)
    assert a.sign(k32, 3, 4) and sum(a.signs) == 1
    assert psi(k32, a) == frozenset()


def test_psi_inverse_rejects_non_matchings(k32):
    with pytest.raises(InvalidMatching, match="shares an endpoint"):
        psi_inverse(k32, frozenset({(1, 4), (1, 5)}))
    with pytest.raises(InvalidMatching, match="not an edge"):
        psi_inverse(k32, frozenset({(1, Leaf(1, 4))}))


def test_edge_tokens():
    assert parse_edge_token("w_2_5-2") == (2, Leaf(2, 5))
    assert parse_edge_token("4-1") == (1, 4)


@pytest.mark.parametrize("name", SMALL)
def test_psi_bijection(name):
    H, _, W, vectors, _ = instance(name)
    images = [psi(H, a) for a in vectors]
    assert len(set(images)) == len(images)
    assert set(images) == set(enumerate_matchings(W))
    assert all(psi_inverse(H, M) == a for a, M in zip(vectors, images))


@pytest.mark.parametrize("name", ALL)
def test_matching_polynomial_shape(name):
    H, _, W, _, _ = instance(name)
    mu = matching_polynomial(W)
    assert is_log_concave(mu.coeffs) and is_unimodal(mu.coeffs)
    assert is_real_rooted(mu)
    assert mu.degree <= len(W.graph().vertices) // 2


@settings(max_examples=20, deadline=None)
@given(bipartite_graphs(), st.randoms(use_true_random=False))
def test_psi_round_trip_random(H, rnd):
    choice = tuple(rnd.choice(H.neighbors(v)) for v in H.vertices)
    signs = tuple(
        choice[i - 1] == j and choice[j - 1] == i and rnd.random() < 0.5 for i, j in H.edges
    )
    a = CliqueVector(choice, signs)
    assert psi_inverse(H, psi(H, a)) == a
