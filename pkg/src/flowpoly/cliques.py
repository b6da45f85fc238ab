"""Clique vectors, the clique map and its inverse, and a maximal-clique search.

A clique vector picks a neighbor ``a_v`` for every vertex of H, plus a sign
per edge of H that may only be ``+`` when the edge is chosen from both ends.
The clique map sends it to a maximal clique of pairwise coherent routes of
G(H); :func:`maximal_cliques` finds the same cliques directly in the
coherence graph, so the two can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .graphs import BipartiteGraph, ExtendedDag
from .routes import Route, coherence_graph, conflict

Clique = tuple[Route, ...]


class InvalidCliqueVector(ValueError):
    pass


class InvalidClique(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CliqueVector:
    """``choice[v - 1]`` is ``a_v``; ``signs[k]`` is the sign of the k-th edge
    of H in lexicographic order (True for ``+``)."""

    choice: tuple[int, ...]
    signs: tuple[bool, ...]

    def __getitem__(self, v: int) -> int:
        return self.choice[v - 1]

    def sign(self, H: BipartiteGraph, i: int, j: int) -> bool:
        return self.signs[H.edge_index(i, j)]

    def mutual(self, i: int, j: int) -> bool:
        return self[i] == j and self[j] == i

    def replace(
        self, H: BipartiteGraph, choices: dict[int, int] | None = None, signs: dict[tuple[int, int], bool] | None = None
    ) -> CliqueVector:
        choice = list(self.choice)
        for v, u in (choices or {}).items():
            choice[v - 1] = u
        sg = list(self.signs)
        for (i, j), s in (signs or {}).items():
            sg[H.edge_index(i, j)] = s
        return CliqueVector(tuple(choice), tuple(sg))

    def as_list(self) -> list:
        """Flat form ``(a_1, ..., a_{n+m}, signs...)`` with '+'/'-' strings."""
        return list(self.choice) + ["+" if s else "-" for s in self.signs]

    def to_json(self, H: BipartiteGraph) -> dict:
        return {
            "a": list(self.choice),
            "signs": {f"{i}-{j}": "+" if s else "-" for (i, j), s in zip(H.edges, self.signs)},
        }

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.as_list()) + ")"


def make_vector(H: BipartiteGraph, entries: Sequence) -> CliqueVector:
    """Build a vector from the flat form, e.g. ``(4,5,4,1,3,'+','-',...)``."""
    nv = H.n + H.m
    if len(entries) != nv + len(H.edges):
        raise InvalidCliqueVector(
            f"expected {nv + len(H.edges)} entries, got {len(entries)}"
        )
    choice = tuple(int(x) for x in entries[:nv])
    signs = []
    for s in entries[nv:]:
        if s not in ("+", "-", True, False):
            raise InvalidCliqueVector(f"sign entry {s!r} is not '+' or '-'")
        signs.append(s in ("+", True))
    return CliqueVector(choice, tuple(signs))


def vector_from_json(H: BipartiteGraph, doc: dict) -> CliqueVector:
    signs = [False] * len(H.edges)
    for key, s in doc.get("signs", {}).items():
        i, j = (int(x) for x in key.split("-"))
        signs[H.edge_index(i, j)] = s == "+"
    return CliqueVector(tuple(doc["a"]), tuple(signs))


def check_clique_vector(H: BipartiteGraph, a: CliqueVector) -> str | None:
    """None if ``a`` is a clique vector of H, else a diagnostic."""
    if len(a.choice) != H.n + H.m or len(a.signs) != len(H.edges):
        raise InvalidCliqueVector(
            f"arity mismatch: need {H.n + H.m} choices and {len(H.edges)} signs"
        )
    for v in H.vertices:
        if a[v] not in H.neighbors(v):
            return f"a_{v} = {a[v]} is not a neighbor of {v}"
    for (i, j), s in zip(H.edges, a.signs):
        if s and not a.mutual(i, j):
            return f"a_{{{i},{j}}} = + but a_{i} = {a[i]} and a_{j} = {a[j]}"
    return None


def validate_clique_vector(H: BipartiteGraph, a: CliqueVector) -> bool:
    return check_clique_vector(H, a) is None


def enumerate_clique_vectors(H: BipartiteGraph) -> Iterator[CliqueVector]:
    """All clique vectors in odometer order of the choices; when an edge is
    chosen from both ends the ``-`` variant comes before the ``+`` one."""
    for choice in product(*(H.neighbors(v) for v in H.vertices)):
        free = [
            k for k, (i, j) in enumerate(H.edges)
            if choice[i - 1] == j and choice[j - 1] == i
        ]
        for bits in product((False, True), repeat=len(free)):
            signs = [False] * len(H.edges)
            for k, s in zip(free, bits):
                signs[k] = s
            yield CliqueVector(choice, tuple(signs))


def phi(H: BipartiteGraph, a: CliqueVector) -> Clique:
    """The clique map: routes through each beta edge chosen by the case
    analysis on ``a_i``, ``a_j`` and the sign."""
    problem = check_clique_vector(H, a)
    if problem:
        raise InvalidCliqueVector(problem)
    routes = []
    for (i, j), plus in zip(H.edges, a.signs):
        ai, aj = a[i], a[j]
        if ai != j and aj != i:
            routes.append(Route(i, j, 2 if ai < j else 1, 2 if aj < i else 1))
        elif ai == j and aj != i:
            b = 2 if aj < i else 1
            routes += [Route(i, j, 1, b), Route(i, j, 2, b)]
        elif aj == i and ai != j:
            c = 2 if ai < j else 1
            routes += [Route(i, j, c, 1), Route(i, j, c, 2)]
        elif plus:
            routes += [Route(i, j, 1, 1), Route(i, j, 2, 1), Route(i, j, 2, 2)]
        else:
            routes += [Route(i, j, 1, 1), Route(i, j, 1, 2), Route(i, j, 2, 2)]
    return tuple(sorted(routes))


def clique_size(H: BipartiteGraph) -> int:
    return H.n + H.m + len(H.edges)


def phi_inverse(H: BipartiteGraph, C: Sequence[Route]) -> CliqueVector:
    """Recover the clique vector of a maximal clique.

    Triple-supported beta edges fix both ends and the sign; double-supported
    ones fix the end whose parallel copies both occur.
    """
    C = tuple(sorted(set(C)))
    if len(C) != clique_size(H):
        raise InvalidClique(
            f"not maximal: {len(C)} routes, a maximal clique has {clique_size(H)}"
        )
    for k, R in enumerate(C):
        if not H.has_edge(R.i, R.j) or R.a not in (1, 2) or R.b not in (1, 2):
            raise InvalidClique(f"{R} is not a route of G(H)")
        for S in C[k + 1:]:
            if conflict(R, S) is not None:
                raise InvalidClique(f"routes {R} and {S} are in conflict")
    on_edge: dict[tuple[int, int], list[Route]] = {e: [] for e in H.edges}
    for R in C:
        on_edge[(R.i, R.j)].append(R)

    choice: dict[int, int] = {}
    signs = [False] * len(H.edges)
    for k, (i, j) in enumerate(H.edges):
        rs = on_edge[(i, j)]
        if len(rs) == 3:
            _set_choice(choice, i, j)
            _set_choice(choice, j, i)
            signs[k] = Route(i, j, 2, 1) in rs
        elif len(rs) == 2:
            if rs[0].b == rs[1].b:
                _set_choice(choice, i, j)
            elif rs[0].a == rs[1].a:
                _set_choice(choice, j, i)
            else:
                raise InvalidClique(f"beta edge {i}-{j} carries two crossing routes")
        elif len(rs) != 1:
            raise InvalidClique(f"beta edge {i}-{j} carries {len(rs)} routes")
    missing = [v for v in H.vertices if v not in choice]
    if missing:
        raise InvalidClique(f"no doubled edge at vertex {missing[0]}")
    a = CliqueVector(tuple(choice[v] for v in H.vertices), tuple(signs))
    if phi(H, a) != C:
        raise InvalidClique("routes are not the image of any clique vector")
    return a


def _set_choice(choice: dict[int, int], v: int, u: int) -> None:
    if choice.setdefault(v, u) != u:
        raise InvalidClique(f"vertex {v} has doubled edges towards both {choice[v]} and {u}")


def bron_kerbosch(adj: dict) -> Iterator[frozenset]:
    """Maximal cliques of an undirected graph, Bron-Kerbosch with pivoting.

    ``adj`` maps each vertex to the set of its neighbors.
    """
    stack = [(frozenset(), set(adj), set())]
    while stack:
        R, P, X = stack.pop()
        if not P and not X:
            yield R
            continue
        pivot = max(P | X, key=lambda u: len(adj[u] & P))
        for v in sorted(P - adj[pivot]):
            stack.append((R | {v}, P & adj[v], X & adj[v]))
            P = P - {v}
            X = X | {v}


def enumerate_maximal_cliques_oracle(G: ExtendedDag) -> set[Clique]:
    """All maximal cliques of the coherence graph, found without clique vectors."""
    return {tuple(sorted(c)) for c in bron_kerbosch(coherence_graph(G))}
