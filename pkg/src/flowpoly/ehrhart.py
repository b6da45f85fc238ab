"""Lattice-point counts, Ehrhart and h* polynomials of the unit flow polytope
of G(H), unimodularity of clique simplices, and the half-open partition.

All arithmetic is exact.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, factorial, prod
from typing import Iterable, Iterator, Sequence

from .cliques import Clique, CliqueVector, enumerate_clique_vectors, phi
from .graphs import BipartiteGraph, ExtendedDag
from .lattice import cover_count, departing_routes
from .polynomial import Polynomial, interpolate
from .routes import Route, enumerate_routes, indicator_vector


class CountingError(RuntimeError):
    """An internal inconsistency between counting routes (signals a bug)."""


class PartitionError(RuntimeError):
    pass


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def count_lattice_points(G: ExtendedDag, t: int) -> int:
    """Integer flows of value ``t`` on G(H).

    A flow is fixed by its loads on the beta edges plus a split of each
    vertex load over its two parallel source (or sink) edges; a load d splits
    in d + 1 ways.
    """
    if t < 0:
        raise ValueError(f"dilation must be nonnegative, got {t}")
    return lattice_point_counts(G, t)[t]


def lattice_point_counts(G: ExtendedDag, tmax: int) -> list[int]:
    """``[i(0), ..., i(tmax)]``, by dynamic programming over left vertices
    with the vector of right-vertex loads as state."""
    H = G.base
    right = list(H.right)
    pos = {j: k for k, j in enumerate(right)}
    states: dict[tuple[int, ...], int] = {tuple([0] * len(right)): 1}
    for i in H.left:
        nbrs = [pos[j] for j in H.neighbors(i)]
        nxt: dict[tuple[int, ...], int] = defaultdict(int)
        for loads, weight in states.items():
            room = tmax - sum(loads)
            for d in range(room + 1):
                w = weight * (d + 1)
                for split in _compositions(d, len(nbrs)):
                    new = list(loads)
                    for k, x in zip(nbrs, split):
                        new[k] += x
                    nxt[tuple(new)] += w
        states = nxt
    counts = [0] * (tmax + 1)
    for loads, weight in states.items():
        counts[sum(loads)] += weight * prod(e + 1 for e in loads)
    return counts


def count_lattice_points_direct(G: ExtendedDag, t: int) -> int:
    """Same count by summing the product formula over every beta-load vector."""
    H = G.base
    total = 0
    for loads in _compositions(t, len(H.edges)) if H.edges else ():
        d = Counter()
        e = Counter()
        for (i, j), x in zip(H.edges, loads):
            d[i] += x
            e[j] += x
        total += prod(d[i] + 1 for i in H.left) * prod(e[j] + 1 for j in H.right)
    return total


def lattice_points_naive(G: ExtendedDag, t: int) -> set[tuple[int, ...]]:
    """Integer points of the t-th dilate as sums of t route vectors.

    Independent of the product formula; flow polytopes have the integer
    decomposition property, so every integer flow of value t arises.
    """
    vecs = [indicator_vector(G, R) for R in enumerate_routes(G)]
    if t == 0:
        return {tuple([0] * G.num_edges)}
    return {tuple(map(sum, zip(*combo))) for combo in combinations_with_replacement(vecs, t)}


def is_flow(G: ExtendedDag, p: Sequence[int], t: int) -> bool:
    if len(p) != G.num_edges or any(x < 0 for x in p):
        return False
    for v in G.inner_vertices:
        inflow = sum(p[G.index[e]] for e in G.in_edges(v))
        outflow = sum(p[G.index[e]] for e in G.out_edges(v))
        if inflow != outflow:
            return False
    return sum(p[G.index[G.alpha(c, i)]] for i in G.base.left for c in (1, 2)) == t


@dataclass
class EhrhartData:
    counts: list[int]
    polynomial: Polynomial
    hstar: Polynomial
    volume: int
    dimension: int


def ehrhart_polynomial(G: ExtendedDag, counts: Sequence[int] | None = None) -> Polynomial:
    """Interpolate i(t) through t = 0..d."""
    d = G.dimension()
    counts = lattice_point_counts(G, d) if counts is None else counts
    return interpolate([(t, counts[t]) for t in range(d + 1)])


def hstar_from_counts(counts: Sequence[int], d: int) -> Polynomial:
    coeffs = []
    for j in range(d + 1):
        coeffs.append(sum((-1) ** k * comb(d + 1, k) * counts[j - k] for k in range(j + 1)))
    if any(c < 0 for c in coeffs):
        raise CountingError(f"negative h* coefficient in {coeffs}")
    return Polynomial(coeffs)


def hstar_via_ehrhart(G: ExtendedDag) -> Polynomial:
    return hstar_from_counts(lattice_point_counts(G, G.dimension()), G.dimension())


def ehrhart_data(G: ExtendedDag) -> EhrhartData:
    d = G.dimension()
    counts = lattice_point_counts(G, d + 1)
    poly = ehrhart_polynomial(G, counts)
    hstar = hstar_from_counts(counts, d)
    lead = poly[d] * factorial(d)
    if lead != sum(hstar.coeffs):
        raise CountingError(f"d! * leading coefficient {lead} != sum of h* {sum(hstar.coeffs)}")
    return EhrhartData(counts, poly, hstar, int(lead), d)


def hstar_via_covers(H: BipartiteGraph, vectors: Iterable[CliqueVector] | None = None) -> Polynomial:
    """Coefficient k counts clique vectors covered by exactly k others."""
    vectors = enumerate_clique_vectors(H) if vectors is None else vectors
    hist = Counter(cover_count(H, a) for a in vectors)
    return Polynomial(hist[k] for k in range(max(hist) + 1))


def smith_diagonal(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix."""
    A = [list(r) for r in rows]
    if not A:
        return []
    nr, nc = len(A), len(A[0])
    diag = []
    for r in range(min(nr, nc)):
        # move a nonzero entry of smallest magnitude to (r, r)
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(r, nr) for j in range(r, nc) if A[i][j]]
            if not nz:
                return diag
            _, pi, pj = min(nz)
            A[r], A[pi] = A[pi], A[r]
            for row in A:
                row[r], row[pj] = row[pj], row[r]
            p = A[r][r]
            clean = True
            for i in range(r + 1, nr):
                q = A[i][r] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                clean &= A[i][r] == 0
            for j in range(r + 1, nc):
                q = A[r][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[r]
                clean &= A[r][j] == 0
            if not clean:
                continue
            bad = [(i, j) for i in range(r + 1, nr) for j in range(r + 1, nc) if A[i][j] % p]
            if bad:
                i, _ = bad[0]
                A[r] = [x + y for x, y in zip(A[r], A[i])]
                continue
            diag.append(abs(p))
            break
    return diag


def unimodularity_check(G: ExtendedDag, C: Sequence[Route] | Sequence[Sequence[int]]) -> tuple[bool, int]:
    """Whether the simplex spanned by C is unimodular; also returns the rank.

    The differences to the first vertex must have rank d = |C| - 1 and all
    invariant factors equal to 1.  C may hold routes or raw 0/1 vectors.
    """
    vecs = [indicator_vector(G, R) if isinstance(R, Route) else tuple(R) for R in C]
    base = vecs[0]
    diffs = [[x - y for x, y in zip(v, base)] for v in vecs[1:]]
    diag = smith_diagonal(diffs)
    ok = len(diag) == len(vecs) - 1 and all(x == 1 for x in diag)
    return ok, len(diag)


def barycentric(G: ExtendedDag, C: Sequence[Route], p: Sequence[int]) -> list[Fraction] | None:
    """Solve sum lambda_R v_R = p exactly; None if p is outside the span."""
    cols = [indicator_vector(G, R) for R in C]
    k = len(cols)
    M = [[Fraction(cols[c][e]) for c in range(k)] + [Fraction(p[e])] for e in range(G.num_edges)]
    row = 0
    pivots = []
    for c in range(k):
        piv = next((r for r in range(row, len(M)) if M[r][c] != 0), None)
        if piv is None:
            return None
        M[row], M[piv] = M[piv], M[row]
        inv = 1 / M[row][c]
        M[row] = [x * inv for x in M[row]]
        for r in range(len(M)):
            if r != row and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[row])]
        pivots.append(row)
        row += 1
    if any(M[r][k] != 0 for r in range(row, len(M))):
        return None
    return [M[r][k] for r in pivots]


@dataclass
class HalfOpenMembership:
    owner: CliqueVector
    clique: Clique
    coefficients: tuple[int, ...]


def half_open_locate(
    H: BipartiteGraph,
    G: ExtendedDag,
    p: Sequence[int],
    t: int,
    vectors: Sequence[CliqueVector] | None = None,
) -> HalfOpenMembership:
    """The half-open clique simplex whose t-th dilate contains p.

    p lies in the half-open simplex of a clique when its barycentric
    coordinates are nonnegative and strictly positive on every route that
    leaves the clique in an upper cover.
    """
    if not is_flow(G, p, t):
        raise ValueError("point is not an integer flow of the requested value")
    owners = []
    for a in vectors if vectors is not None else enumerate_clique_vectors(H):
        C = phi(H, a)
        lam = barycentric(G, C, p)
        if lam is None or any(x < 0 for x in lam):
            continue
        if any(x.denominator != 1 for x in lam):
            raise PartitionError(f"non-integral barycentric coordinates in {a}")
        coef = dict(zip(C, lam))
        if all(coef[R] >= 1 for R in departing_routes(H, a)):
            owners.append(HalfOpenMembership(a, C, tuple(int(x) for x in lam)))
    if len(owners) != 1:
        raise PartitionError(f"point {tuple(p)} has {len(owners)} half-open owners")
    return owners[0]


def half_open_partition(
    H: BipartiteGraph, G: ExtendedDag, t: int, vectors: Sequence[CliqueVector] | None = None
) -> tuple[Counter, Counter]:
    """Lattice points of each half-open clique simplex at dilation t.

    Returns (owner count per point, points per number of removed facets).
    Points of a unimodular simplex are exactly the integer combinations of
    its vertices with coefficients summing to t.
    """
    owners: Counter = Counter()
    by_removed: Counter = Counter()
    vectors = list(enumerate_clique_vectors(H)) if vectors is None else vectors
    for a in vectors:
        C = phi(H, a)
        leaving = set(departing_routes(H, a))
        spare = t - len(leaving)
        if spare < 0:
            continue
        supports = [[G.index[e] for e in R.edges()] for R in C]
        floor = [0] * G.num_edges
        for R, sup in zip(C, supports):
            if R in leaving:
                for e in sup:
                    floor[e] += 1
        for extra in combinations_with_replacement(range(len(C)), spare):
            point = list(floor)
            for k in extra:
                for e in supports[k]:
                    point[e] += 1
            owners[tuple(point)] += 1
            by_removed[len(leaving)] += 1
    return owners, by_removed
