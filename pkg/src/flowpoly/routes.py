"""Routes of G(H), the canonical bipartite framing, and route conflicts.

Every route of G(H) has the shape alpha_{a,i} beta_{i,j} gamma_{j,b}, so a
route is stored as the tuple ``(i, j, a, b)``.  Two routes can only conflict
on a shared beta edge, at a shared left vertex, or at a shared right vertex;
:func:`conflict` decides which in constant time.  :func:`coherent_by_definition`
runs the general prefix/suffix comparison over shared subroutes and is kept
as an independent check of the specialized rule.
"""

from __future__ import annotations

import enum
from itertools import combinations
from typing import NamedTuple

from .graphs import SINK, SOURCE, DagEdge, ExtendedDag


class Route(NamedTuple):
    i: int
    j: int
    a: int
    b: int

    def edges(self) -> tuple[DagEdge, DagEdge, DagEdge]:
        return (
            DagEdge("alpha", SOURCE, self.i, self.a),
            DagEdge("beta", self.i, self.j, 0),
            DagEdge("gamma", self.j, SINK, self.b),
        )

    def vertices(self) -> tuple:
        return (SOURCE, self.i, self.j, SINK)

    @property
    def token(self) -> str:
        return f"a{self.a}_{self.i} b_{self.i}_{self.j} g_{self.j}_{self.b}"

    def __str__(self) -> str:
        return self.token


def parse_route(token: str) -> Route:
    """Inverse of :attr:`Route.token`."""
    try:
        alpha, beta, gamma = token.split()
        a, i = alpha[1:].split("_")
        _, i2, j = beta.split("_")
        _, j2, b = gamma.split("_")
        if alpha[0] != "a" or beta[0] != "b" or gamma[0] != "g" or i != i2 or j != j2:
            raise ValueError
        return Route(int(i), int(j), int(a), int(b))
    except ValueError:
        raise ValueError(f"malformed route token {token!r}") from None


def enumerate_routes(G: ExtendedDag) -> list[Route]:
    """All source-to-sink paths, four per edge of H, ordered by (i, j, a, b)."""
    return [Route(i, j, a, b) for i, j in G.base.edges for a in (1, 2) for b in (1, 2)]


def indicator_vector(G: ExtendedDag, R: Route) -> tuple[int, ...]:
    vec = [0] * G.num_edges
    for e in R.edges():
        vec[G.index[e]] = 1
    return tuple(vec)


def framing_less(G: ExtendedDag, v: int, e1: DagEdge, e2: DagEdge) -> bool:
    """Whether ``e1`` precedes ``e2`` in the canonical framing at ``v``."""
    ins, outs = G.in_edges(v), G.out_edges(v)
    for side in (ins, outs):
        if e1 in side and e2 in side:
            return side.index(e1) < side.index(e2)
    raise ValueError(f"edges {e1.id} and {e2.id} are not comparable at vertex {v}")


class ConflictKind(enum.Enum):
    BETA = "beta-cross"
    SOURCE_SIDE = "source-side"
    SINK_SIDE = "sink-side"


class Conflict(NamedTuple):
    kind: ConflictKind
    where: tuple[int, ...]  # the shared edge (i, j) or the shared vertex


def conflict(R1: Route, R2: Route) -> Conflict | None:
    """The conflict between two distinct routes, or None if coherent."""
    if R1 == R2:
        raise ValueError("a route is compared with itself")
    if R1.i == R2.i and R1.j == R2.j:
        if R1.a != R2.a and R1.b != R2.b:
            # prefixes compared by alpha copy, suffixes by gamma copy
            if (R1.a < R2.a) != (R1.b < R2.b):
                return Conflict(ConflictKind.BETA, (R1.i, R1.j))
        return None
    if R1.i == R2.i:
        if R1.a != R2.a and (R1.a < R2.a) != (R1.j < R2.j):
            return Conflict(ConflictKind.SOURCE_SIDE, (R1.i,))
        return None
    if R1.j == R2.j:
        if R1.b != R2.b and (R1.i < R2.i) != (R1.b < R2.b):
            return Conflict(ConflictKind.SINK_SIDE, (R1.j,))
        return None
    return None


def coherent(R1: Route, R2: Route) -> bool:
    return R1 == R2 or conflict(R1, R2) is None


def cw_of(R1: Route, R2: Route) -> bool:
    """Whether ``R1`` is clockwise from ``R2``: its prefix comes first and its
    suffix comes last at the place where the two conflict."""
    c = conflict(R1, R2)
    if c is None:
        raise ValueError(f"routes {R1} and {R2} are coherent")
    if c.kind is ConflictKind.SINK_SIDE:
        return R1.i < R2.i
    return R1.a < R2.a


def cw_cmp(R1: Route, R2: Route) -> int:
    """+1 if R1 is cw of R2, -1 if R2 is cw of R1.  Raises on coherent pairs."""
    return 1 if cw_of(R1, R2) else -1


def coherence_graph(G: ExtendedDag) -> dict[Route, set[Route]]:
    routes = enumerate_routes(G)
    adj: dict[Route, set[Route]] = {R: set() for R in routes}
    for R1, R2 in combinations(routes, 2):
        if conflict(R1, R2) is None:
            adj[R1].add(R2)
            adj[R2].add(R1)
    return adj


def coherence_graph_document(G: ExtendedDag) -> dict:
    adj = coherence_graph(G)
    return {R.token: sorted(S.token for S in sorted(adj[R])) for R in sorted(adj)}


# General definition, used only to validate the specialized rule above.


def _partial_order(G: ExtendedDag, paths: tuple[list[DagEdge], list[DagEdge]], backwards: bool) -> int:
    """Compare two partial routes meeting at a common vertex.

    ``paths`` are edge lists ending (or, with ``backwards=False``, starting)
    at that vertex.  Walk away from it until the edges differ and compare the
    differing edges in the framing at the vertex where they diverge.  Returns
    -1, 0 or 1; 0 means the partial routes are identical.
    """
    p, q = paths
    if backwards:
        p, q = p[::-1], q[::-1]
    for e, f in zip(p, q):
        if e != f:
            v = e.head if backwards else e.tail
            return -1 if framing_less(G, v, e, f) else 1
    return 0


def coherent_by_definition(G: ExtendedDag, R: Route, S: Route) -> bool:
    """Coherence checked at every maximal shared subroute [u, v]."""
    er, es = list(R.edges()), list(S.edges())
    vr, vs = R.vertices(), S.vertices()
    inner_r = [k for k, x in enumerate(vr) if x not in (SOURCE, SINK)]
    k = 0
    while k < len(inner_r):
        pr = inner_r[k]
        if vr[pr] not in vs:
            k += 1
            continue
        ps = vs.index(vr[pr])
        # extend the shared block forward along identical edges
        end_r, end_s = pr, ps
        while (
            end_r + 1 < len(vr) - 1
            and end_s + 1 < len(vs) - 1
            and er[end_r] == es[end_s]
        ):
            end_r += 1
            end_s += 1
        prefix = _partial_order(G, (er[:pr], es[:ps]), backwards=True)
        suffix = _partial_order(G, (er[end_r:], es[end_s:]), backwards=False)
        if prefix and suffix and prefix != suffix:
            return False
        k = inner_r.index(end_r) + 1
    return True
