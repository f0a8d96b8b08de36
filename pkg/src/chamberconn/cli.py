"""Command-line front end: one object per run, JSON or DOT out.

Exit codes: 0 ok, 2 bad arguments, 3 size cap exceeded, 4 a path family
failed verification, 5 any other error.  Errors are also written to
stderr as a one-line JSON object.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from .building import building_disjoint_paths, building_parameters
from .connectivity import (
    PathFamily,
    distance_two,
    liu_check,
    local_connectivity,
    vertex_connectivity,
    verify_disjoint_family,
)
from .coxeter import coxeter_disjoint_fan, normalize_word, parse_word
from .errors import ChamberError, VerificationFailed
from .io import Loaded, dumps, load_building, load_complex, load_coxeter, load_graph, load_lattice, read_json, to_dot
from .lattice import lattice_disjoint_paths, q_of_lattice, validate_geometric


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _report_error("UsageError", message, 2)
        self.print_usage(sys.stderr)
        sys.exit(2)


def _report_error(kind: str, message: str, code: int) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit_code": code}, sort_keys=True) + "\n")


def _add_object(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--coxeter", metavar="SPEC", help="Coxeter matrix JSON file, or A3, B3, I2:5, I2:inf, affineA:2")
    g.add_argument("--building", metavar="N,P", help="complete flags of F_p^n")
    g.add_argument("--lattice", metavar="SPEC", help="boolean:4, partition:5, subspace:3,2, or a lattice JSON file")
    g.add_argument("--graph", metavar="FILE", help="chamber graph JSON")
    g.add_argument("--complex", metavar="FILE", help="pure simplicial complex JSON")
    p.add_argument("--radius", type=int, default=None, help="Cayley ball radius (default: whole group)")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled pairs; recorded in the output")
    p.add_argument("--out", metavar="FILE", help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chamberconn", description="Chamber graph connectivity toolkit.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="construct the object and emit its chamber graph")
    _add_object(p)

    p = sub.add_parser("params", help="degree, q parameters and validity checks")
    _add_object(p)

    p = sub.add_parser("paths", help="disjoint paths between two chambers at distance two")
    _add_object(p)
    p.add_argument("--from", dest="source", help="chamber id (or word for --coxeter); sampled if omitted")
    p.add_argument("--to", dest="target")

    p = sub.add_parser("connectivity", help="Liu check, exact connectivity, or one pair")
    _add_object(p)
    p.add_argument("--mode", choices=("liu", "exact", "local"), default="exact")
    p.add_argument("--k", type=int, help="target connectivity for --mode liu (default: minimum degree)")
    p.add_argument("--from", dest="source")
    p.add_argument("--to", dest="target")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--allow-incomplete", action="store_true", help="accept truncated balls; results are lower bounds")
    p.add_argument("--margin", type=int, default=1)

    p = sub.add_parser("verify", help="certify a path family file against the object's chamber graph")
    _add_object(p)
    p.add_argument("--family", required=True, metavar="FILE")

    p = sub.add_parser("export", help="write the chamber graph as DOT or JSON")
    _add_object(p)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    return parser


def _load(args) -> Loaded:
    if args.coxeter:
        return load_coxeter(args.coxeter, args.radius)
    if args.building:
        return load_building(args.building)
    if args.lattice:
        return load_lattice(args.lattice)
    if args.graph:
        return load_graph(args.graph)
    return load_complex(args.complex)


def _vertex(obj: Loaded, text: str | None):
    """Resolve a --from/--to value to a graph vertex id."""
    G = obj.graph
    if obj.kind == "coxeter":
        key = normalize_word(obj.obj, parse_word(text))
        if key not in G.index:
            raise ChamberError(f"{text} lies outside the ball")
        return G.index[key]
    try:
        v = int(text)
    except ValueError:
        raise ChamberError(f"expected a chamber id, got {text!r}") from None
    if not 0 <= v < G.n:
        raise ChamberError(f"chamber id {v} out of range 0..{G.n - 1}")
    return v


def _pair(obj: Loaded, args) -> tuple[int, int]:
    if args.source is not None and args.target is not None:
        return _vertex(obj, args.source), _vertex(obj, args.target)
    if args.source is not None or args.target is not None:
        raise ChamberError("give both --from and --to, or neither")
    pairs = distance_two(obj.graph)
    if len(pairs) == 0:
        raise ChamberError("graph has no pair at distance two")
    a, b = pairs[random.Random(args.seed).randrange(len(pairs))]
    return int(a), int(b)


def _named(obj: Loaded, F: PathFamily) -> list[list[str]]:
    return [[obj.name(x) for x in p] for p in F.paths]


def cmd_build(obj: Loaded, args) -> dict:
    return {"object": obj.describe, "graph": obj.graph.to_json(obj.name)}


def cmd_params(obj: Loaded, args) -> dict:
    G = obj.graph
    deg = G.degrees()
    doc = {
        "object": obj.describe,
        "vertices": G.n,
        "edges": G.num_edges,
        "complete": G.complete,
        "regular": bool(G.is_regular()),
        "min_degree": int(deg.min()),
        "max_degree": int(deg.max()),
    }
    if obj.kind == "coxeter":
        doc["rank"] = obj.obj.rank
        doc["two_finite"] = obj.obj.is_two_finite()
    elif obj.kind == "building":
        params = building_parameters(obj.obj)
        doc["q"] = {str(s): v for s, v in params.q.items()}
        doc["q_total"] = params.q_total
    elif obj.kind == "lattice":
        report = validate_geometric(obj.obj)
        doc["geometric"] = report.to_json()
        doc["rank"] = obj.obj.n
        if report.ok and obj.obj.n >= 2:
            doc["local_width"] = q_of_lattice(obj.obj).to_json()
    return doc


def cmd_paths(obj: Loaded, args) -> dict:
    G = obj.graph
    u, v = _pair(obj, args)
    if obj.kind == "coxeter":
        F = coxeter_disjoint_fan(obj.obj, G.keys[u], G.keys[v])
    elif obj.kind == "building":
        F = building_disjoint_paths(obj.obj, G.keys[u], G.keys[v])
    elif obj.kind == "lattice":
        F = lattice_disjoint_paths(obj.obj, G.keys[u], G.keys[v])
    else:
        F = local_connectivity(G, u, v).family
    doc = {"object": obj.describe, "names": _named(obj, F)}
    if all(x in G.index for p in F.paths for x in p):
        cert = verify_disjoint_family(G, F)
        doc["family"] = F.to_json(G)
        doc["certificate"] = cert.to_json() if cert.ok else cert.to_json(G)
        if not cert.ok:
            raise VerificationFailed(f"constructed family rejected: {cert.message}")
    else:
        doc["family"] = {"source": u, "target": v, "provenance": F.provenance, "paths": None}
        doc["certificate"] = {"ok": True, "note": "checked on the subgraph spanned by the paths"}
    return doc


def cmd_connectivity(obj: Loaded, args) -> dict:
    G = obj.graph
    doc = {"object": obj.describe}
    if args.mode == "exact":
        report = vertex_connectivity(G, jobs=args.jobs)
        doc["report"] = report.to_json()
    elif args.mode == "liu":
        k = args.k if args.k is not None else int(G.degrees().min())
        report = liu_check(G, k, jobs=args.jobs, allow_incomplete=args.allow_incomplete, margin=args.margin)
        doc["report"] = report.to_json()
    else:
        u, v = _pair(obj, args)
        local = local_connectivity(G, u, v, allow_incomplete=args.allow_incomplete, margin=args.margin)
        doc["report"] = {
            "method": "local",
            "pair": [u, v],
            "value": local.value,
            "cut": list(local.cut),
            "adjacent": local.adjacent,
            "lower_bound": local.lower_bound,
            "family": local.family.to_json(G),
        }
    return doc


def cmd_verify(obj: Loaded, args) -> dict:
    G = obj.graph
    raw = read_json(args.family)
    F = PathFamily.from_json(raw.get("family", raw), G)
    cert = verify_disjoint_family(G, F)
    doc = {"object": obj.describe, "certificate": cert.to_json() if cert.ok else cert.to_json(G)}
    if not cert.ok:
        _emit(doc, args)
        raise VerificationFailed(f"{cert.kind}: {cert.message}")
    return doc


def cmd_export(obj: Loaded, args):
    if args.format == "dot":
        return to_dot(obj.graph, obj.name)
    return cmd_build(obj, args)


COMMANDS = {
    "build": cmd_build,
    "params": cmd_params,
    "paths": cmd_paths,
    "connectivity": cmd_connectivity,
    "verify": cmd_verify,
    "export": cmd_export,
}


def _emit(doc, args) -> None:
    if isinstance(doc, dict):
        doc = dict(doc, seed=args.seed, command=args.command)
        text = dumps(doc)
    else:
        text = doc
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        obj = _load(args)
        doc = COMMANDS[args.command](obj, args)
    except ChamberError as exc:
        _report_error(type(exc).__name__, str(exc), exc.exit_code)
        return exc.exit_code
    except (OSError, ValueError, KeyError) as exc:
        _report_error(type(exc).__name__, str(exc), 5)
        return 5
    _emit(doc, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
