"""Loading objects named on the command line, and DOT/JSON writers."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Callable

from .building import flag_building
from .complex import ChamberGraph, PureComplex, chamber_graph_from_complex
from .coxeter import INF, CoxeterMatrix, affine_a, cayley_ball, dihedral, format_word, type_a, type_b
from .errors import ChamberError
from .lattice import GeometricLattice, parse_lattice_spec


DEFAULT_RADIUS = 64


@dataclass
class Loaded:
    kind: str  # coxeter | building | lattice | graph | complex
    obj: Any
    graph: ChamberGraph
    describe: dict
    name: Callable[[Any], str]


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def read_json(path: str):
    with open(path) as fh:
        return json.load(fh)


_NAMED = re.compile(r"^(A|B|I2|affineA):?(\w+)$")


def coxeter_from_spec(text: str) -> CoxeterMatrix:
    """A JSON file, or a name: ``A3``, ``B3``, ``I2:5``, ``I2:inf``, ``affineA:2``."""
    m = _NAMED.match(text)
    if m:
        family, arg = m.groups()
        if family == "I2":
            return dihedral(INF if arg in ("inf", "0") else int(arg))
        return {"A": type_a, "B": type_b, "affineA": affine_a}[family](int(arg))
    return CoxeterMatrix.from_json(read_json(text))


def load_coxeter(text: str, radius: int | None) -> Loaded:
    W = coxeter_from_spec(text)
    if radius is None:
        # finite groups within the vertex cap have longest elements far
        # shorter than this
        G = cayley_ball(W, DEFAULT_RADIUS)
        if not G.complete:
            raise ChamberError(f"ball of radius {DEFAULT_RADIUS} is not the whole group; pass --radius")
    else:
        G = cayley_ball(W, radius)
    desc = {"coxeter": W.to_json(), "radius": radius}
    return Loaded("coxeter", W, G, desc, format_word)


def load_building(text: str) -> Loaded:
    try:
        n, p = (int(v) for v in text.split(","))
    except ValueError:
        raise ChamberError(f"--building expects n,p, got {text!r}") from None
    B = flag_building(n, p)

    def name(flag) -> str:
        return "/".join(";".join("".join(map(str, r)) for r in m) for m in B.matrices(flag))

    return Loaded("building", B, B.graph, {"building": B.to_json()}, name)


def load_lattice(text: str) -> Loaded:
    if text.endswith(".json"):
        P = GeometricLattice.from_json(read_json(text))
    else:
        P = parse_lattice_spec(text)
    return Loaded("lattice", P, P.chamber_graph, {"lattice": text}, lambda c: "<".join(P.labels[x] for x in c))


def load_graph(path: str) -> Loaded:
    G = ChamberGraph.from_json(read_json(path))
    return Loaded("graph", G, G, {"graph": path}, str)


def load_complex(path: str) -> Loaded:
    K = PureComplex.from_json(read_json(path))
    G = chamber_graph_from_complex(K)
    return Loaded("complex", K, G, {"complex": path}, lambda c: ",".join(map(str, c)))


def to_dot(G: ChamberGraph, name: Callable[[Any], str] = str, title: str = "chambers") -> str:
    """Undirected DOT with one statement per line, vertices then edges, by id."""

    def quote(s: str) -> str:
        return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = [f"graph {quote(title)} {{"]
    for i, k in enumerate(G.keys):
        lines.append(f"  {i} [label={quote(name(k))}];")
    for a, b, lab in G.edges:
        attr = "" if lab is None else f" [label={quote(lab)}]"
        lines.append(f"  {a} -- {b}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_NODE = re.compile(r'^\s*(\d+) \[label="((?:[^"\\]|\\.)*)"\];$')
_DOT_EDGE = re.compile(r'^\s*(\d+) -- (\d+)(?: \[label="((?:[^"\\]|\\.)*)"\])?;$')


def parse_dot(text: str) -> tuple[dict[int, str], list[tuple[int, int, str | None]]]:
    """Read back what :func:`to_dot` writes."""
    nodes, edges = {}, []
    for line in text.splitlines():
        if m := _DOT_NODE.match(line):
            nodes[int(m.group(1))] = m.group(2)
        elif m := _DOT_EDGE.match(line):
            edges.append((int(m.group(1)), int(m.group(2)), m.group(3)))
    return nodes, edges
