"""Full cross-verification of one instance.

Every identity is computed along independent routes and compared exactly;
each check records pass/fail plus witnesses for whatever went wrong.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations

from .cliques import (
    CliqueVector,
    clique_size,
    enumerate_clique_vectors,
    enumerate_maximal_cliques_oracle,
    phi,
    phi_inverse,
)
from .ehrhart import (
    ehrhart_data,
    half_open_partition,
    hstar_via_covers,
    lattice_points_naive,
    unimodularity_check,
)
from .graphs import BipartiteGraph, extend, whisker
from .lattice import build_lattice, covers, covers_oracle, upper_covers
from .matchings import enumerate_matchings, matching_polynomial, psi, psi_inverse
from .polynomial import is_log_concave, is_real_rooted, is_unimodal

MAX_WITNESSES = 5


@dataclass
class Report:
    instance: str
    counts: dict = field(default_factory=dict)
    hstar_covers: list[int] = field(default_factory=list)
    hstar_ehrhart: list[int] = field(default_factory=list)
    matching_poly: list[int] = field(default_factory=list)
    volume: int = 0
    checks: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, list[str]] = field(default_factory=dict)
    seconds: float = 0.0

    def record(self, name: str, failures: list[str]) -> None:
        self.checks[name] = not failures
        if failures:
            self.witnesses[name] = failures[:MAX_WITNESSES]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self, timing: bool = False) -> dict:
        doc = {
            "instance": self.instance,
            "counts": self.counts,
            "hstar_covers": self.hstar_covers,
            "hstar_ehrhart": self.hstar_ehrhart,
            "matching_poly": self.matching_poly,
            "volume": self.volume,
            "checks": {k: "pass" if v else "fail" for k, v in self.checks.items()},
        }
        if self.witnesses:
            doc["witnesses"] = self.witnesses
        if timing:
            doc["seconds"] = round(self.seconds, 3)
        return doc


def cover_agreement(H: BipartiteGraph, vectors: list[CliqueVector]) -> list[str]:
    """Compare the vector-level cover test with the rotation oracle.

    Pairs outside both candidate sets fail both tests by their first step:
    the vector test needs vectors at Hamming distance 1 or 2, the oracle
    needs cliques sharing a facet.  Candidates are gathered exhaustively for
    each side and then tested.
    """
    cliques = {a: phi(H, a) for a in vectors}
    by_facet = defaultdict(list)
    for a, C in cliques.items():
        for k in range(len(C)):
            by_facet[C[:k] + C[k + 1:]].append(a)
    oracle = set()
    for group in by_facet.values():
        for a, b in combinations(group, 2):
            if covers_oracle(cliques[a], cliques[b]):
                oracle.add((a, b))
            if covers_oracle(cliques[b], cliques[a]):
                oracle.add((b, a))

    flat = {a: a.choice + a.signs for a in vectors}
    width = len(next(iter(flat.values())))
    near = set()
    for p, q in combinations(range(width), 2):
        groups = defaultdict(list)
        for a, x in flat.items():
            groups[x[:p] + x[p + 1:q] + x[q + 1:]].append(a)
        for group in groups.values():
            near.update((a, b) for a in group for b in group if a != b)
    vector_level = {(a, b) for a, b in near if covers(H, a, b) is not None}

    failures = [f"oracle only: {a} -> {b}" for a, b in sorted(oracle - vector_level)]
    failures += [f"vector test only: {a} -> {b}" for a, b in sorted(vector_level - oracle)]
    return failures


def verify_all(
    H: BipartiteGraph, name: str = "graph", samples: int = 200, seed: int = 0, tmax: int = 2
) -> Report:
    start = time.perf_counter()
    rep = Report(name)
    G = extend(H)
    W = whisker(H)
    d = G.dimension()

    vectors = list(enumerate_clique_vectors(H))
    images = [phi(H, a) for a in vectors]
    oracle = enumerate_maximal_cliques_oracle(G)
    matchings = set(enumerate_matchings(W))
    mu = matching_polynomial(W)
    hc = hstar_via_covers(H, vectors)
    ed = ehrhart_data(G)
    rep.hstar_covers = list(hc.coeffs)
    rep.hstar_ehrhart = list(ed.hstar.coeffs)
    rep.matching_poly = list(mu.coeffs)
    rep.volume = ed.volume
    rep.counts = {
        "routes": 4 * len(H.edges),
        "edges_G": G.num_edges,
        "dimension": d,
        "clique_size": clique_size(H),
        "clique_vectors": len(vectors),
        "cliques": len(oracle),
        "matchings": len(matchings),
        "lattice_points": ed.counts,
    }

    fails = []
    if len(set(images)) != len(images):
        fails.append("phi is not injective")
    fails += [f"oracle clique not hit: {[str(R) for R in C]}" for C in sorted(oracle - set(images))]
    fails += [f"phi image not maximal: {[str(R) for R in C]}" for C in sorted(set(images) - oracle)]
    fails += [f"round trip fails at {a}" for a, C in zip(vectors, images) if phi_inverse(H, C) != a]
    rep.record("phi_bijection", fails)

    pimages = [psi(H, a) for a in vectors]
    fails = []
    if len(set(pimages)) != len(pimages):
        fails.append("psi is not injective")
    if set(pimages) != matchings:
        fails.append(f"psi image has {len(set(pimages))} matchings, W(H) has {len(matchings)}")
    fails += [f"round trip fails at {a}" for a, M in zip(vectors, pimages) if psi_inverse(H, M) != a]
    rep.record("psi_bijection", fails)

    sizes = {
        "cliques": len(oracle),
        "clique_vectors": len(vectors),
        "matchings": len(matchings),
        "sum_hstar": sum(ed.hstar.coeffs),
        "volume": ed.volume,
    }
    rep.record("volume_identity", [] if len(set(sizes.values())) == 1 else [str(sizes)])

    rep.record(
        "hstar_identity",
        [] if hc == ed.hstar == mu else [f"covers {hc}, ehrhart {ed.hstar}, matching {mu}"],
    )

    rep.record(
        "ehrhart_out_of_sample",
        [] if ed.polynomial(d + 1) == ed.counts[d + 1]
        else [f"interpolant gives {ed.polynomial(d + 1)} at t={d + 1}, count is {ed.counts[d + 1]}"],
    )

    fails = []
    for t in range(tmax + 1):
        naive = len(lattice_points_naive(G, t))
        if naive != ed.counts[t]:
            fails.append(f"t={t}: product formula {ed.counts[t]}, route sums {naive}")
    rep.record("lattice_count_crosscheck", fails)

    fails = []
    for a, C in zip(vectors, images):
        ok, rank = unimodularity_check(G, C)
        if not ok or rank != d:
            fails.append(f"{a}: unimodular={ok} rank={rank}")
    rep.record("unimodular", fails)

    fails = []
    for t in range(1, tmax + 1):
        owners, _ = half_open_partition(H, G, t, vectors)
        points = lattice_points_naive(G, t)
        multi = [p for p, c in owners.items() if c != 1]
        if multi:
            fails.append(f"t={t}: {len(multi)} points with several owners")
        if set(owners) != points:
            fails.append(f"t={t}: {len(points - set(owners))} points without owner")
        if sum(owners.values()) != ed.counts[t]:
            fails.append(f"t={t}: {sum(owners.values())} owners, i(t) = {ed.counts[t]}")
    rep.record("half_open_partition", fails)

    fails = []
    for a, M in zip(vectors, pimages):
        ups = upper_covers(H, a)
        if len(ups) != len(M) or any(covers(H, a, b) is None for b in ups):
            fails.append(f"{a}: {len(ups)} upper covers, matching has {len(M)} edges")
    rep.record("cover_count", fails)

    rep.record("cover_oracle_agreement", cover_agreement(H, vectors))

    lat = build_lattice(H, samples=samples, seed=seed)
    fails = []
    if not lat.acyclic:
        fails.append("cover digraph has a cycle")
    if not (lat.unique_min and lat.unique_max):
        fails.append("minimum or maximum is not unique")
    if lat.nodes != len(oracle):
        fails.append(f"lattice has {lat.nodes} nodes")
    fails += lat.cmax_failures
    rep.record("lattice_hypotheses", fails)

    coeffs = list(ed.hstar.coeffs)
    fails = []
    if coeffs[0] != 1 or any(c < 0 for c in coeffs):
        fails.append(f"coefficients {coeffs}")
    if not is_log_concave(coeffs):
        fails.append("not log-concave")
    if not is_unimodal(coeffs):
        fails.append("not unimodal")
    if not is_real_rooted(ed.hstar):
        fails.append("not real-rooted")
    rep.record("polynomial_shape", fails)

    rep.seconds = time.perf_counter() - start
    return rep
