"""Command-line front end.

Exit status: 0 on success, 1 when the input graph is rejected, 2 when a
verification check fails, 64 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .cliques import enumerate_clique_vectors, enumerate_maximal_cliques_oracle, phi
from .ehrhart import ehrhart_data, hstar_via_covers, hstar_via_ehrhart, lattice_point_counts
from .graphs import CORPUS, BipartiteGraph, GraphError, corpus_graph, extend, parse_bipartite, whisker
from .lattice import build_lattice, lattice_document
from .matchings import enumerate_matchings, matching_polynomial, matching_tokens
from .routes import coherence_graph_document, enumerate_routes
from .verify import verify_all

EXIT_INVALID = 1
EXIT_VERIFY = 2
EXIT_USAGE = 64

COMMANDS = (
    "validate", "extend", "whisker", "routes", "cliques", "matchings",
    "lattice", "hstar", "ehrhart", "verify", "corpus",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--graph", metavar="PATH", help="graph file (JSON or edge list); '-' reads stdin")
    src.add_argument("--instance", choices=sorted(CORPUS), help="built-in corpus graph")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")

    parser = _Parser(prog="flowpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "hstar":
            p.add_argument("--method", choices=("covers", "ehrhart"), default="covers")
        if name == "ehrhart":
            p.add_argument("--tmax", type=int, default=None, help="largest dilation counted (default d+1)")
        if name in ("verify", "corpus"):
            p.add_argument("--tmax", type=int, default=2, help="largest dilation for the partition check")
        if name == "cliques":
            p.add_argument("--method", choices=("vectors", "oracle"), default="vectors")
        if name == "routes":
            p.add_argument("--coherence", action="store_true", help="emit the coherence graph adjacency list")
    return parser


def _load(args) -> tuple[str, BipartiteGraph]:
    if args.instance:
        return args.instance, corpus_graph(args.instance)
    if not args.graph:
        raise UsageError("one of --graph or --instance is required")
    if args.graph == "-":
        return "stdin", parse_bipartite(sys.stdin.read())
    try:
        with open(args.graph, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.graph}: {exc.strerror}") from None
    return os.path.basename(args.graph), parse_bipartite(text)


def _emit(args, doc, text_lines) -> None:
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _report_lines(rep) -> list[str]:
    lines = [f"instance {rep.instance}"]
    for k, v in rep.counts.items():
        lines.append(f"  {k}: {v}")
    lines.append(f"  volume: {rep.volume}")
    lines.append(f"  h* (covers):  {_poly_text(rep.hstar_covers)}")
    lines.append(f"  h* (ehrhart): {_poly_text(rep.hstar_ehrhart)}")
    lines.append(f"  matching polynomial: {_poly_text(rep.matching_poly)}")
    for name, ok in rep.checks.items():
        lines.append(f"  [{'pass' if ok else 'FAIL'}] {name}")
        for w in rep.witnesses.get(name, []):
            lines.append(f"      {w}")
    return lines


def _poly_text(coeffs) -> str:
    from .polynomial import Polynomial

    return Polynomial(coeffs).render()


def _verify_named(job):
    name, H, seed, tmax = job
    return verify_all(H, name, seed=seed, tmax=tmax)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("FLOWPOLY_THREADS", "1")))
    except ValueError:
        return 1


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "corpus":
            return _corpus(args)
        name, H = _load(args)
    except UsageError as exc:
        print(f"flowpoly: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphError as exc:
        print(f"flowpoly: invalid graph: {exc}", file=sys.stderr)
        return EXIT_INVALID

    G = extend(H)
    cmd = args.command
    if cmd == "validate":
        doc = {"valid": True, "graph": H.to_dict()}
        if H.labels is not None:
            doc["relabeling"] = {str(lab): v for v, lab in zip(H.vertices, H.labels)}
        _emit(args, doc, [f"valid: n={H.n} m={H.m} edges={len(H.edges)}"])
    elif cmd == "extend":
        doc = G.to_dict()
        _emit(args, doc, [f"{e.id}: {e.tail} -> {e.head}" for e in G.edges] + [f"dimension {G.dimension()}"])
    elif cmd == "whisker":
        W = whisker(H)
        doc = W.to_dict()
        _emit(args, doc, doc["edges"])
    elif cmd == "routes":
        if args.coherence:
            doc = coherence_graph_document(G)
            _emit(args, doc, [f"{r}: {', '.join(adj)}" for r, adj in doc.items()])
        else:
            tokens = [R.token for R in enumerate_routes(G)]
            _emit(args, {"count": len(tokens), "routes": tokens}, tokens)
    elif cmd == "cliques":
        if args.method == "oracle":
            cliques = sorted(enumerate_maximal_cliques_oracle(G))
            entries = [{"routes": [R.token for R in C]} for C in cliques]
            lines = ["; ".join(e["routes"]) for e in entries]
        else:
            vecs = list(enumerate_clique_vectors(H))
            entries = [{"vector": a.to_json(H), "routes": [R.token for R in phi(H, a)]} for a in vecs]
            lines = [f"{a}: " + "; ".join(R.token for R in phi(H, a)) for a in vecs]
        _emit(args, {"count": len(entries), "cliques": entries}, lines)
    elif cmd == "matchings":
        W = whisker(H)
        ms = sorted(matching_tokens(M) for M in enumerate_matchings(W))
        mu = matching_polynomial(W)
        doc = {"count": len(ms), "matchings": ms, "polynomial": mu.to_json()}
        _emit(args, doc, ["{" + ", ".join(m) + "}" for m in ms] + [f"mu = {mu}"])
    elif cmd == "lattice":
        rep = build_lattice(H, seed=args.seed)
        summary = {
            "nodes": rep.nodes,
            "cover_edges": rep.cover_edges,
            "cover_histogram": rep.cover_histogram,
            "acyclic": rep.acyclic,
            "unique_min": rep.unique_min,
            "unique_max": rep.unique_max,
            "face_samples": rep.cmax_samples,
            "face_failures": rep.cmax_failures,
        }
        doc = {"report": summary, "lattice": lattice_document(H)}
        _emit(args, doc, [f"{k}: {v}" for k, v in summary.items()])
        if not rep.ok:
            return EXIT_VERIFY
    elif cmd == "hstar":
        poly = hstar_via_covers(H) if args.method == "covers" else hstar_via_ehrhart(G)
        _emit(args, poly.to_json(), [poly.render()])
    elif cmd == "ehrhart":
        data = ehrhart_data(G)
        tmax = data.dimension + 1 if args.tmax is None else args.tmax
        counts = lattice_point_counts(G, tmax)
        doc = {
            "dimension": data.dimension,
            "counts": counts,
            "polynomial": data.polynomial.to_json(),
            "hstar": data.hstar.to_json(),
            "volume": data.volume,
        }
        _emit(args, doc, [
            f"dimension {data.dimension}",
            "i(t) for t = 0..%d: %s" % (tmax, " ".join(map(str, counts))),
            f"ehrhart polynomial: {data.polynomial.render('t')}",
            f"h*: {data.hstar}",
            f"normalized volume: {data.volume}",
        ])
    elif cmd == "verify":
        rep = verify_all(H, name, seed=args.seed, tmax=args.tmax)
        _emit(args, rep.to_json(), _report_lines(rep))
        return 0 if rep.ok else EXIT_VERIFY
    return 0


def _corpus(args) -> int:
    jobs = [(name, corpus_graph(name), args.seed, args.tmax) for name in CORPUS]
    workers = _workers()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_verify_named, jobs))
    else:
        reports = [_verify_named(job) for job in jobs]
    lines = []
    for rep in reports:
        lines += _report_lines(rep)
    _emit(args, {"reports": [r.to_json() for r in reports]}, lines)
    return 0 if all(r.ok for r in reports) else EXIT_VERIFY


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
