"""Bipartite input graphs, their DAG extensions, whiskered graphs and coronas.

Vertex labels are fixed: the left shore is ``1..n`` and the right shore is
``n+1..n+m``.  Everything downstream (the framing, the clique map, the
matching map) depends on this label order, so inputs with other labels are
relabeled on the way in.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, NamedTuple

SOURCE = "s"
SINK = "t"


class GraphError(ValueError):
    """Raised for malformed or inadmissible graph input."""


@dataclass(frozen=True)
class BipartiteGraph:
    """A simple connected bipartite graph with minimum degree at least 2.

    ``edges`` holds pairs ``(i, j)`` with ``i`` on the left shore and ``j`` on
    the right shore, sorted lexicographically.  ``labels`` records the
    original vertex names when the input was relabeled (index ``v - 1`` is the
    original name of canonical vertex ``v``).
    """

    n: int
    m: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[Hashable, ...] | None = field(default=None, compare=False)
    _nbrs: dict[int, tuple[int, ...]] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise GraphError(f"both shores must be non-empty, got n={self.n}, m={self.m}")
        seen: set[tuple[int, int]] = set()
        norm = []
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"edge {e!r} does not have two endpoints")
            u, v = (int(x) for x in e)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            i, j = min(u, v), max(u, v)
            if not (1 <= i <= self.n and self.n < j <= self.n + self.m):
                raise GraphError(
                    f"edge {u}-{v} does not join the shores "
                    f"1..{self.n} and {self.n + 1}..{self.n + self.m}"
                )
            if (i, j) in seen:
                raise GraphError(f"duplicate edge {i}-{j} (multigraphs are not supported)")
            seen.add((i, j))
            norm.append((i, j))
        norm.sort()
        object.__setattr__(self, "edges", tuple(norm))

        nbrs: dict[int, list[int]] = {v: [] for v in self.vertices}
        for i, j in norm:
            nbrs[i].append(j)
            nbrs[j].append(i)
        low = [v for v in self.vertices if len(nbrs[v]) < 2]
        if low:
            detail = ", ".join(f"vertex {v} has degree {len(nbrs[v])}" for v in low)
            raise GraphError(f"minimum degree 2 required: {detail}")
        object.__setattr__(
            self, "_nbrs", {v: tuple(sorted(ns)) for v, ns in nbrs.items()}
        )

        reached = {1}
        queue = deque([1])
        while queue:
            v = queue.popleft()
            for u in self._nbrs[v]:
                if u not in reached:
                    reached.add(u)
                    queue.append(u)
        if len(reached) != len(self.vertices):
            missing = min(set(self.vertices) - reached)
            raise GraphError(f"graph is disconnected: vertex {missing} is not reachable from vertex 1")

    @property
    def vertices(self) -> range:
        return range(1, self.n + self.m + 1)

    @property
    def left(self) -> range:
        return range(1, self.n + 1)

    @property
    def right(self) -> range:
        return range(self.n + 1, self.n + self.m + 1)

    def is_left(self, v: int) -> bool:
        return 1 <= v <= self.n

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbors of ``v`` in ascending order."""
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def has_edge(self, i: int, j: int) -> bool:
        return j in self._nbrs.get(i, ())

    def edge_index(self, i: int, j: int) -> int:
        return self.edges.index((min(i, j), max(i, j)))

    def to_dict(self) -> dict:
        return {"shores": [self.n, self.m], "edges": [list(e) for e in self.edges]}


def leaf_exists(H: BipartiteGraph, v: int, u: int) -> bool:
    """Whether W(H) has the pendant leaf ``w_{v,u}``.

    A left vertex has no leaf named after its smallest neighbor, a right
    vertex none named after its largest neighbor.
    """
    nbrs = H.neighbors(v)
    if u not in nbrs:
        return False
    if H.is_left(v):
        return u != nbrs[0]
    return u != nbrs[-1]


def parse_bipartite(text: str) -> BipartiteGraph:
    """Parse a graph document (JSON or plain-text edge list).

    JSON: ``{"shores": [n, m], "edges": [[i, j], ...]}`` with canonical labels,
    or ``{"shores": [[left labels...], [right labels...]], "edges": [...]}``
    with arbitrary labels, which are relabeled in the listed order.

    Plain text: first line ``n m``, then one ``i j`` pair per line.
    """
    stripped = text.strip()
    if not stripped:
        raise GraphError("empty graph document")
    if stripped[0] == "{":
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed JSON: {exc}") from None
        return _from_json(doc)

    lines = [ln.split("#", 1)[0].split() for ln in stripped.splitlines()]
    lines = [ln for ln in lines if ln]
    try:
        n, m = (int(x) for x in lines[0])
        edges = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError:
        raise GraphError("malformed edge list: expected 'n m' then 'i j' lines") from None
    return BipartiteGraph(n, m, tuple(edges))


def _from_json(doc: object) -> BipartiteGraph:
    if not isinstance(doc, dict) or "shores" not in doc or "edges" not in doc:
        raise GraphError('graph document needs "shores" and "edges" keys')
    shores, edges = doc["shores"], doc["edges"]
    if not isinstance(shores, list) or len(shores) != 2:
        raise GraphError('"shores" must be a two-element list')
    if not isinstance(edges, list) or not all(
        isinstance(e, list) and len(e) == 2 for e in edges
    ):
        raise GraphError('"edges" must be a list of pairs')
    if all(isinstance(s, int) and not isinstance(s, bool) for s in shores):
        if not all(isinstance(x, int) and not isinstance(x, bool) for e in edges for x in e):
            raise GraphError("edge endpoints must be integers")
        return BipartiteGraph(shores[0], shores[1], tuple(tuple(e) for e in edges))
    if all(isinstance(s, list) for s in shores):
        return relabel(shores[0], shores[1], [tuple(e) for e in edges])
    raise GraphError('"shores" must be two counts or two label lists')


def relabel(
    left: Iterable[Hashable], right: Iterable[Hashable], edges: Iterable[tuple]
) -> BipartiteGraph:
    """Build a canonical graph from arbitrary labels.

    The relabeling map is kept on the result as ``labels``.
    """
    left, right = list(left), list(right)
    names = left + right
    if len(set(names)) != len(names):
        raise GraphError("shore label lists overlap or repeat a label")
    canon = {name: k for k, name in enumerate(names, start=1)}
    out = []
    for u, v in edges:
        if u not in canon or v not in canon:
            raise GraphError(f"edge {u}-{v} uses an unknown vertex label")
        out.append((canon[u], canon[v]))
    return BipartiteGraph(len(left), len(right), tuple(out), labels=tuple(names))


class DagEdge(NamedTuple):
    """An edge of the extension G(H).

    ``copy`` is 1 or 2 for the doubled source and sink edges, 0 for the
    middle edges.
    """

    kind: str
    tail: int | str
    head: int | str
    copy: int

    @property
    def id(self) -> str:
        if self.kind == "alpha":
            return f"a{self.copy}_{self.head}"
        if self.kind == "beta":
            return f"b_{self.tail}_{self.head}"
        return f"g_{self.tail}_{self.copy}"


@dataclass(frozen=True)
class ExtendedDag:
    """The extension G(H) of a bipartite graph.

    Coordinates follow ``edges``: every alpha edge ordered by (vertex, copy),
    then every beta edge by (i, j), then every gamma edge by (vertex, copy).
    """

    base: BipartiteGraph
    edges: tuple[DagEdge, ...]
    index: Mapping[DagEdge, int] = field(repr=False, compare=False)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def inner_vertices(self) -> range:
        return self.base.vertices

    def alpha(self, copy: int, i: int) -> DagEdge:
        return DagEdge("alpha", SOURCE, i, copy)

    def beta(self, i: int, j: int) -> DagEdge:
        return DagEdge("beta", i, j, 0)

    def gamma(self, j: int, copy: int) -> DagEdge:
        return DagEdge("gamma", j, SINK, copy)

    def in_edges(self, v: int) -> list[DagEdge]:
        if self.base.is_left(v):
            return [self.alpha(1, v), self.alpha(2, v)]
        return [self.beta(i, v) for i in self.base.neighbors(v)]

    def out_edges(self, v: int) -> list[DagEdge]:
        if self.base.is_left(v):
            return [self.beta(v, j) for j in self.base.neighbors(v)]
        return [self.gamma(v, 1), self.gamma(v, 2)]

    def dimension(self) -> int:
        """Dimension of the unit flow polytope: |E| - #inner vertices - 1."""
        return self.num_edges - len(self.inner_vertices) - 1

    def to_dict(self) -> dict:
        return {
            "graph": self.base.to_dict(),
            "edges": [
                {"id": e.id, "tail": e.tail, "head": e.head} for e in self.edges
            ],
            "dimension": self.dimension(),
        }


def extend(H: BipartiteGraph) -> ExtendedDag:
    """Build G(H): doubled edges from the source to every left vertex, the
    edges of H directed left to right, doubled edges from every right vertex
    to the sink."""
    edges = [DagEdge("alpha", SOURCE, i, c) for i in H.left for c in (1, 2)]
    edges += [DagEdge("beta", i, j, 0) for i, j in H.edges]
    edges += [DagEdge("gamma", j, SINK, c) for j in H.right for c in (1, 2)]
    dag = ExtendedDag(H, tuple(edges), {e: k for k, e in enumerate(edges)})
    # G(H) never has idle edges when H has minimum degree 2.
    assert all(
        len(dag.in_edges(v)) >= 2 and len(dag.out_edges(v)) >= 2 for v in H.vertices
    )
    return dag


def dimension(G: ExtendedDag) -> int:
    return G.dimension()


@dataclass(frozen=True)
class SimpleGraph:
    """Loop-free simple undirected graph with hashable vertex labels."""

    vertices: tuple[Hashable, ...]
    edges: tuple[tuple[Hashable, Hashable], ...]

    def __post_init__(self) -> None:
        verts = set(self.vertices)
        if len(verts) != len(self.vertices):
            raise GraphError("repeated vertex label")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at {u!r}")
            if u not in verts or v not in verts:
                raise GraphError(f"edge {u!r}-{v!r} has an endpoint outside the vertex set")
            key = frozenset((u, v))
            if key in seen:
                raise GraphError(f"duplicate edge {u!r}-{v!r}")
            seen.add(key)

    @classmethod
    def complete(cls, k: int) -> SimpleGraph:
        vs = tuple(range(1, k + 1))
        return cls(vs, tuple((u, v) for u in vs for v in vs if u < v))

    @classmethod
    def empty(cls, k: int) -> SimpleGraph:
        return cls(tuple(range(1, k + 1)), ())

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g


def corona(G: SimpleGraph, family: Mapping[Hashable, SimpleGraph]) -> SimpleGraph:
    """Join every vertex ``v`` of ``G`` to its own copy of ``family[v]``.

    Attached vertices are relabeled ``(v, x)`` for vertex ``x`` of ``family[v]``.
    """
    missing = [v for v in G.vertices if v not in family]
    if missing:
        raise GraphError(f"family has no graph for vertex {missing[0]!r}")
    vertices = list(G.vertices)
    edges = list(G.edges)
    for v in G.vertices:
        Hv = family[v]
        vertices += [(v, x) for x in Hv.vertices]
        edges += [(v, (v, x)) for x in Hv.vertices]
        edges += [((v, x), (v, y)) for x, y in Hv.edges]
    return SimpleGraph(tuple(vertices), tuple(edges))


class Leaf(NamedTuple):
    """Pendant vertex ``w_{owner,tag}`` of W(H)."""

    owner: int
    tag: int

    def __str__(self) -> str:
        return f"w_{self.owner}_{self.tag}"


@dataclass(frozen=True)
class WhiskeredGraph:
    """W(H): H with deg(v) - 1 pendant leaves at every vertex v."""

    base: BipartiteGraph
    leaves: tuple[Leaf, ...]

    def graph(self) -> SimpleGraph:
        verts = tuple(self.base.vertices) + self.leaves
        edges = tuple(self.base.edges) + tuple((w.owner, w) for w in self.leaves)
        return SimpleGraph(verts, edges)

    @property
    def num_edges(self) -> int:
        return len(self.base.edges) + len(self.leaves)

    def to_dict(self) -> dict:
        return {
            "graph": self.base.to_dict(),
            "leaves": [{"id": str(w), "attached_to": w.owner} for w in self.leaves],
            "edges": [f"{i}-{j}" for i, j in self.base.edges]
            + [f"{w}-{w.owner}" for w in self.leaves],
        }


def whisker(H: BipartiteGraph) -> WhiskeredGraph:
    leaves = tuple(
        Leaf(v, u) for v in H.vertices for u in H.neighbors(v) if leaf_exists(H, v, u)
    )
    return WhiskeredGraph(H, leaves)


def complete_bipartite(p: int, q: int) -> BipartiteGraph:
    return BipartiteGraph(p, q, tuple((i, p + j) for i in range(1, p + 1) for j in range(1, q + 1)))


def even_cycle(k: int) -> BipartiteGraph:
    """The cycle C_{2k} with left shore 1..k and right shore k+1..2k."""
    edges = []
    for i in range(1, k + 1):
        edges.append((i, k + i))
        edges.append((i, k + i % k + 1))
    return BipartiteGraph(k, k, tuple(edges))


def complete_minus_matching(k: int) -> BipartiteGraph:
    """K_{k,k} with the perfect matching {i, k+i} removed."""
    return BipartiteGraph(
        k, k, tuple((i, k + j) for i in range(1, k + 1) for j in range(1, k + 1) if i != j)
    )


CORPUS: dict[str, tuple] = {
    "K22": (complete_bipartite, 2, 2),
    "K23": (complete_bipartite, 2, 3),
    "K32": (complete_bipartite, 3, 2),
    "K33": (complete_bipartite, 3, 3),
    "C6": (even_cycle, 3),
    "C8": (even_cycle, 4),
    "K33-M": (complete_minus_matching, 3),
}


def corpus_graph(name: str) -> BipartiteGraph:
    build, *args = CORPUS[name]
    return build(*args)
