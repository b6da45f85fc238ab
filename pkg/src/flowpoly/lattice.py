"""Cover relations of the framing lattice on maximal cliques of G(H).

:func:`covers` reads a cover straight off two clique vectors; :func:`covers_oracle`
decides the same relation from the cliques themselves (one route swapped
for its counterclockwise rotation).  :func:`upper_covers` produces the
covers of a vector by one action per edge of its matching.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .cliques import Clique, CliqueVector, enumerate_clique_vectors, phi
from .graphs import BipartiteGraph
from .matchings import psi
from .routes import Route, conflict, cw_of


class LatticeError(RuntimeError):
    pass


class CoverWitness(NamedTuple):
    condition: int
    changes: tuple  # (entry, old, new) triples


def _below(H: BipartiteGraph, v: int, u: int) -> int | None:
    """Largest neighbor of v smaller than u."""
    smaller = [x for x in H.neighbors(v) if x < u]
    return smaller[-1] if smaller else None


def _above(H: BipartiteGraph, v: int, u: int) -> int | None:
    """Smallest neighbor of v larger than u."""
    larger = [x for x in H.neighbors(v) if x > u]
    return larger[0] if larger else None


def _diff(H: BipartiteGraph, a: CliqueVector, b: CliqueVector):
    verts = [v for v in H.vertices if a[v] != b[v]]
    edges = [e for k, e in enumerate(H.edges) if a.signs[k] != b.signs[k]]
    return verts, edges


def covers(H: BipartiteGraph, a: CliqueVector, b: CliqueVector) -> CoverWitness | None:
    """Witness that phi(b) covers phi(a) in the framing lattice, else None.

    Raises :class:`LatticeError` if more than one of the four cover
    conditions matches, since they are mutually exclusive.
    """
    verts, edges = _diff(H, a, b)
    found: list[CoverWitness] = []

    if len(verts) == 1 and not edges:
        (v,) = verts
        j = a[v]
        # (1) a left choice moves down to the next smaller neighbor,
        # (2) a right choice moves up to the next larger one
        if H.is_left(v) and a[j] != v and b[v] == _below(H, v, j):
            found.append(CoverWitness(1, ((v, j, b[v]),)))
        if not H.is_left(v) and a[j] != v and b[v] == _above(H, v, j):
            found.append(CoverWitness(2, ((v, j, b[v]),)))
    # (3) one sign flips from - to +
    if not verts and len(edges) == 1:
        i, j = edges[0]
        if not a.sign(H, i, j) and b.sign(H, i, j):
            found.append(CoverWitness(3, (((i, j), "-", "+"),)))
    # (4) a + sign drops to - while one end of that edge moves on
    if len(verts) == 1 and len(edges) == 1:
        (v,) = verts
        i, j = edges[0]
        if a.sign(H, i, j) and not b.sign(H, i, j):
            moved = (v == i and b[i] == _below(H, i, j)) or (v == j and b[j] == _above(H, j, i))
            if moved:
                found.append(CoverWitness(4, (((i, j), "+", "-"), (v, a[v], b[v]))))
    if len(found) > 1:
        raise LatticeError(f"conditions {[w.condition for w in found]} all hold for {a} -> {b}")
    return found[0] if found else None


def covers_oracle(C1: Sequence[Route], C2: Sequence[Route]) -> bool:
    """Whether C2 arises from C1 by a single counterclockwise rotation."""
    s1, s2 = set(C1), set(C2)
    gone, new = s1 - s2, s2 - s1
    if len(gone) != 1 or len(new) != 1:
        return False
    (R1,), (R2,) = gone, new
    return conflict(R1, R2) is not None and cw_of(R1, R2)


def upper_covers(H: BipartiteGraph, a: CliqueVector) -> list[CliqueVector]:
    """The covers of ``a``: one per edge of psi(a)."""
    out = []
    for u, w in psi(H, a):
        if not isinstance(u, int) or not isinstance(w, int):
            v, tag = (u, w.tag) if isinstance(u, int) else (w, u.tag)
            step = _below(H, v, tag) if H.is_left(v) else _above(H, v, tag)
            # a leaf edge w_{v,tag} exists, so tag is not the extreme neighbor
            assert step is not None
            if a[tag] == v:
                out.append(a.replace(H, {v: step}, {(min(v, tag), max(v, tag)): False}))
            else:
                out.append(a.replace(H, {v: step}))
        else:
            out.append(a.replace(H, signs={(u, w): True}))
    return sorted(out)


def cover_count(H: BipartiteGraph, a: CliqueVector) -> int:
    k = len(psi(H, a))
    if len(upper_covers(H, a)) != k:
        raise LatticeError(f"cover count disagrees with matching size at {a}")
    return k


def departing_routes(H: BipartiteGraph, a: CliqueVector) -> list[Route]:
    """Routes of phi(a) that leave when moving to each upper cover."""
    Ca = set(phi(H, a))
    out = []
    for b in upper_covers(H, a):
        (R,) = Ca - set(phi(H, b))
        out.append(R)
    return out


@dataclass
class LatticeReport:
    nodes: int
    cover_edges: int
    cover_histogram: list[int]
    acyclic: bool
    unique_min: bool
    unique_max: bool
    top: CliqueVector | None
    bottom: CliqueVector | None
    cmax_samples: int = 0
    cmax_failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.acyclic and self.unique_min and self.unique_max and not self.cmax_failures


def cover_digraph(H: BipartiteGraph, vectors: Iterable[CliqueVector] | None = None) -> dict[CliqueVector, list[CliqueVector]]:
    vectors = list(enumerate_clique_vectors(H)) if vectors is None else list(vectors)
    return {a: upper_covers(H, a) for a in vectors}


def _is_acyclic(succ: dict) -> bool:
    indeg = Counter(b for bs in succ.values() for b in bs)
    ready = [a for a in succ if indeg[a] == 0]
    seen = 0
    while ready:
        a = ready.pop()
        seen += 1
        for b in succ[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                ready.append(b)
    return seen == len(succ)


def face_bounds(H: BipartiteGraph, S: Iterable[Route]) -> tuple[dict[int, int], dict[int, int], set]:
    """Bounds on every choice ``a_v`` forced by the routes of a face S, plus
    the edges whose sign S forces to ``-``."""
    lo = {v: H.neighbors(v)[0] for v in H.vertices}
    hi = {v: H.neighbors(v)[-1] for v in H.vertices}
    minus = set()
    for R in S:
        i, j = R.i, R.j
        if R.a == 2:
            hi[i] = min(hi[i], j)
        else:
            lo[i] = max(lo[i], j)
        if R.b == 2:
            hi[j] = min(hi[j], i)
        else:
            lo[j] = max(lo[j], i)
        if R.a == 1 and R.b == 2:
            minus.add((i, j))
    return lo, hi, minus


def top_of_face(H: BipartiteGraph, S: Iterable[Route]) -> CliqueVector:
    """The clique vector of the largest clique containing the face S: left
    choices as small and right choices as large as S allows."""
    lo, hi, minus = face_bounds(H, S)
    choice = {v: (lo[v] if H.is_left(v) else hi[v]) for v in H.vertices}
    signs = tuple(
        choice[i] == j and choice[j] == i and (i, j) not in minus for i, j in H.edges
    )
    return CliqueVector(tuple(choice[v] for v in H.vertices), signs)


def check_face(
    H: BipartiteGraph,
    S: frozenset,
    succ: dict[CliqueVector, list[CliqueVector]],
    cliques: dict[CliqueVector, frozenset],
) -> str | None:
    """Check that the cliques containing S have a unique cover-maximal one,
    reached by covers that keep S, and that it is the one predicted by
    :func:`top_of_face`.  Returns a diagnostic or None."""
    members = [a for a, C in cliques.items() if S <= C]
    inside = set(members)
    sinks = [a for a in members if not any(b in inside for b in succ[a])]
    if len(sinks) != 1:
        return f"face {sorted(map(str, S))} has {len(sinks)} maximal cliques"
    predicted = top_of_face(H, S)
    if predicted != sinks[0]:
        return f"face {sorted(map(str, S))}: predicted top {predicted}, found {sinks[0]}"
    return None


def build_lattice(H: BipartiteGraph, samples: int = 200, seed: int = 0) -> LatticeReport:
    vectors = list(enumerate_clique_vectors(H))
    succ = cover_digraph(H, vectors)
    indeg = Counter(b for bs in succ.values() for b in bs)
    hist = Counter(len(bs) for bs in succ.values())
    tops = [a for a, bs in succ.items() if not bs]
    bottoms = [a for a in succ if indeg[a] == 0]
    report = LatticeReport(
        nodes=len(vectors),
        cover_edges=sum(len(bs) for bs in succ.values()),
        cover_histogram=[hist[k] for k in range(max(hist) + 1)],
        acyclic=_is_acyclic(succ),
        unique_min=len(bottoms) == 1,
        unique_max=len(tops) == 1,
        top=tops[0] if len(tops) == 1 else None,
        bottom=bottoms[0] if len(bottoms) == 1 else None,
    )
    if samples:
        cliques = {a: frozenset(phi(H, a)) for a in vectors}
        rng = random.Random(seed)
        faces = []
        # half the samples are facets shared by adjacent cliques
        edges = [(a, b) for a, bs in succ.items() for b in bs]
        for _ in range(samples // 2):
            a, b = rng.choice(edges)
            faces.append(cliques[a] & cliques[b])
        for _ in range(samples - samples // 2):
            C = sorted(cliques[rng.choice(vectors)])
            faces.append(frozenset(R for R in C if rng.random() < 0.5))
        for S in faces:
            problem = check_face(H, S, succ, cliques)
            if problem:
                report.cmax_failures.append(problem)
        report.cmax_samples = len(faces)
    return report


def lattice_document(H: BipartiteGraph) -> dict:
    """Cover pairs as clique-vector serializations."""
    succ = cover_digraph(H)
    return {
        "nodes": [a.to_json(H) for a in sorted(succ)],
        "covers": [
            {"lower": a.to_json(H), "upper": b.to_json(H)}
            for a in sorted(succ)
            for b in succ[a]
        ],
    }
