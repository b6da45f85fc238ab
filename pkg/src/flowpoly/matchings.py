"""Matchings of W(H), the matching polynomial, and the matching map.

Edges of W(H) are pairs ``(i, j)`` of base vertices or ``(v, Leaf(v, u))``
for the pendant leaf ``w_{v,u}``.  Absent leaves (see
:func:`flowpoly.graphs.leaf_exists`) are simply left out of the matching.
"""

from __future__ import annotations

from collections import Counter
from typing import Hashable, Iterator

from .cliques import CliqueVector, InvalidCliqueVector, check_clique_vector
from .graphs import BipartiteGraph, Leaf, SimpleGraph, WhiskeredGraph, leaf_exists
from .polynomial import Polynomial

Edge = tuple[Hashable, Hashable]
Matching = frozenset  # of Edge


class InvalidMatching(ValueError):
    pass


def enumerate_matchings(W: WhiskeredGraph | SimpleGraph) -> Iterator[Matching]:
    """Every matching, the empty one included, by backtracking over the
    fixed edge order of the graph."""
    g = W.graph() if isinstance(W, WhiskeredGraph) else W
    edges = list(g.edges)

    def extend(k: int, used: frozenset, chosen: tuple) -> Iterator[Matching]:
        if k == len(edges):
            yield frozenset(chosen)
            return
        yield from extend(k + 1, used, chosen)
        u, v = edges[k]
        if u not in used and v not in used:
            yield from extend(k + 1, used | {u, v}, chosen + (edges[k],))

    return extend(0, frozenset(), ())


def matching_polynomial(W: WhiskeredGraph | SimpleGraph) -> Polynomial:
    sizes = Counter(len(M) for M in enumerate_matchings(W))
    return Polynomial(sizes[k] for k in range(max(sizes) + 1))


def _leaf_edge(H: BipartiteGraph, v: int, u: int) -> list[Edge]:
    return [(v, Leaf(v, u))] if leaf_exists(H, v, u) else []


def psi(H: BipartiteGraph, a: CliqueVector) -> Matching:
    """The matching map.  Leaf edges whose leaf is absent are omitted."""
    problem = check_clique_vector(H, a)
    if problem:
        raise InvalidCliqueVector(problem)
    edges: list[Edge] = []
    for v in H.vertices:
        u = a[v]
        if a[u] != v:
            edges += _leaf_edge(H, v, u)
    for (i, j), plus in zip(H.edges, a.signs):
        if a.mutual(i, j):
            if plus:
                edges += _leaf_edge(H, i, j) + _leaf_edge(H, j, i)
            else:
                edges.append((i, j))
    return frozenset(edges)


def check_matching(H: BipartiteGraph, M: Matching) -> None:
    covered: set = set()
    for e in M:
        u, v = e
        if isinstance(v, Leaf):
            ok = u == v.owner and leaf_exists(H, v.owner, v.tag)
        else:
            ok = not isinstance(u, Leaf) and H.has_edge(u, v) and u < v
        if not ok:
            raise InvalidMatching(f"{edge_token(e)} is not an edge of W(H)")
        if u in covered or v in covered:
            raise InvalidMatching(f"edge {edge_token(e)} shares an endpoint with another edge")
        covered |= {u, v}


def psi_inverse(H: BipartiteGraph, M: Matching) -> CliqueVector:
    check_matching(H, M)
    choice: dict[int, int] = {}
    base_edges = set()
    for u, v in M:
        if isinstance(v, Leaf):
            choice[v.owner] = v.tag
        else:
            choice[u], choice[v] = v, u
            base_edges.add((u, v))
    for v in H.vertices:
        if v not in choice:
            nbrs = H.neighbors(v)
            choice[v] = nbrs[0] if H.is_left(v) else nbrs[-1]
    signs = tuple(
        choice[i] == j and choice[j] == i and (i, j) not in base_edges
        for i, j in H.edges
    )
    return CliqueVector(tuple(choice[v] for v in H.vertices), signs)


def edge_token(e: Edge) -> str:
    u, v = e
    if isinstance(v, Leaf):
        return f"{v}-{v.owner}"
    return f"{u}-{v}"


def parse_edge_token(token: str) -> Edge:
    left, right = token.split("-")
    if left.startswith("w_"):
        _, owner, tag = left.split("_")
        return (int(right), Leaf(int(owner), int(tag)))
    u, v = int(left), int(right)
    return (min(u, v), max(u, v))


def matching_tokens(M: Matching) -> list[str]:
    return sorted(edge_token(e) for e in M)
