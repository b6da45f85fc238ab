import json

import networkx as nx
import pytest
from hypothesis import given, settings

from flowpoly.graphs import (
    BipartiteGraph,
    GraphError,
    Leaf,
    SimpleGraph,
    corona,
    corpus_graph,
    dimension,
    even_cycle,
    extend,
    parse_bipartite,
    whisker,
)

from .conftest import bipartite_graphs


def test_parse_k32():
    H = parse_bipartite('{"shores":[3,2],"edges":[[1,4],[1,5],[2,4],[2,5],[3,4],[3,5]]}')
    assert (H.n, H.m) == (3, 2)
    assert list(H.left) == [1, 2, 3] and list(H.right) == [4, 5]
    assert H.neighbors(4) == (1, 2, 3)


def test_parse_k22_and_edge_list():
    H = parse_bipartite('{"shores":[2,2],"edges":[[1,3],[1,4],[2,3],[2,4]]}')
    assert len(H.edges) == 4
    assert parse_bipartite("2 2\n1 3\n1 4\n2 3\n2 4\n") == H


def test_degree_one_rejected_names_vertices():
    with pytest.raises(GraphError) as exc:
        parse_bipartite('{"shores":[2,2],"edges":[[1,3],[2,3],[2,4]]}')
    assert "vertex 1" in str(exc.value) and "vertex 4" in str(exc.value)


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ('{"shores":[2,2],"edges":[[1,3],[1,3],[2,3],[2,4],[1,4]]}', "duplicate edge 1-3"),
        ('{"shores":[2,2],"edges":[[1,2],[1,3],[2,4]]}', "does not join"),
        ('{"shores":[2,2],"edges":[[1,3],[1,1]]}', "loop"),
        ('{"shores":[2,2]}', "edges"),
        ("{not json", "malformed JSON"),
        ("2 2\n1 x\n", "malformed edge list"),
    ],
)
def test_malformed_documents(doc, fragment):
    with pytest.raises(GraphError, match=fragment):
        parse_bipartite(doc)


def test_disconnected_rejected():
    # two disjoint 4-cycles
    edges = [(1, 5), (1, 6), (2, 5), (2, 6), (3, 7), (3, 8), (4, 7), (4, 8)]
    with pytest.raises(GraphError, match="disconnected"):
        BipartiteGraph(4, 4, tuple(edges))


def test_relabeling_map():
    doc = {"shores": [["x", "y"], ["p", "q"]], "edges": [["x", "p"], ["x", "q"], ["y", "p"], ["y", "q"]]}
    H = parse_bipartite(json.dumps(doc))
    assert H == corpus_graph("K22")
    assert H.labels == ("x", "y", "p", "q")


@pytest.mark.parametrize("name, count", [("K32", 16), ("K22", 12), ("C6", 18)])
def test_extension_edge_count(name, count):
    G = extend(corpus_graph(name))
    assert G.num_edges == count


def test_extension_coordinate_order():
    G = extend(corpus_graph("K22"))
    ids = [e.id for e in G.edges]
    assert ids == [
        "a1_1", "a2_1", "a1_2", "a2_2",
        "b_1_3", "b_1_4", "b_2_3", "b_2_4",
        "g_3_1", "g_3_2", "g_4_1", "g_4_2",
    ]


@pytest.mark.parametrize("name, d", [("K32", 10), ("K22", 7), ("C6", 11)])
def test_dimension(name, d):
    assert dimension(extend(corpus_graph(name))) == d


def test_whisker_k32_leaves():
    W = whisker(corpus_graph("K32"))
    assert sorted(map(str, W.leaves)) == sorted(
        ["w_1_5", "w_2_5", "w_3_5", "w_4_1", "w_4_2", "w_5_1", "w_5_2"]
    )
    assert W.num_edges == 13


def test_whisker_cycle_one_leaf_each():
    H = even_cycle(3)
    W = whisker(H)
    assert len(W.leaves) == 6
    assert sorted(w.owner for w in W.leaves) == list(H.vertices)


def test_corona_path_with_complete_graphs():
    path = SimpleGraph((1, 2, 3), ((1, 2), (2, 3)))
    g = corona(path, {i: SimpleGraph.complete(i) for i in (1, 2, 3)})
    assert len(g.vertices) == 9
    assert len(g.edges) == 12


def test_corona_with_empty_family_is_identity():
    path = SimpleGraph((1, 2, 3), ((1, 2), (2, 3)))
    g = corona(path, {v: SimpleGraph((), ()) for v in path.vertices})
    assert g == path


def test_corona_star():
    g = corona(SimpleGraph(("v",), ()), {"v": SimpleGraph.empty(3)})
    assert len(g.edges) == 3
    assert sorted(dict(g.to_networkx().degree).values()) == [1, 1, 1, 3]


def test_corona_missing_vertex():
    with pytest.raises(GraphError, match="no graph for vertex"):
        corona(SimpleGraph((1, 2), ((1, 2),)), {1: SimpleGraph.empty(1)})


@settings(max_examples=40, deadline=None)
@given(bipartite_graphs())
def test_structural_counts(H):
    G = extend(H)
    W = whisker(H)
    assert G.num_edges == 2 * H.n + 2 * H.m + len(H.edges)
    assert G.dimension() + 1 == H.n + H.m + len(H.edges)
    assert len(W.leaves) == 2 * len(H.edges) - H.n - H.m
    for v in H.vertices:
        assert sum(1 for w in W.leaves if w.owner == v) == H.degree(v) - 1


@settings(max_examples=25, deadline=None)
@given(bipartite_graphs())
def test_whisker_is_corona_of_empty_graphs(H):
    base = SimpleGraph(tuple(H.vertices), H.edges)
    cor = corona(base, {v: SimpleGraph.empty(H.degree(v) - 1) for v in H.vertices})
    assert nx.is_isomorphic(cor.to_networkx(), whisker(H).graph().to_networkx())


def test_leaf_is_named_tuple():
    assert str(Leaf(4, 1)) == "w_4_1"
