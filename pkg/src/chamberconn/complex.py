"""Pure simplicial complexes, chamber graphs and balanced colorings."""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import ChamberError, NotBalanced, NotPure, ResourceLimit
from ._config import max_vertices

PROVENANCES = ("coxeter", "building", "lattice", "generic")


@dataclass(frozen=True, eq=False)
class ChamberGraph:
    """Simple undirected graph on chambers.

    Vertex ``i`` stands for the chamber ``keys[i]``; ``edges`` holds sorted
    triples ``(a, b, label)`` with ``a < b``.  ``boundary`` lists vertices
    of a truncated (ball) graph whose neighbourhood may be incomplete.
    """

    keys: tuple
    edges: tuple
    complete: bool = True
    provenance: str = "generic"
    boundary: frozenset = field(default_factory=frozenset)

    @classmethod
    def build(
        cls,
        keys: Sequence[Hashable],
        edges: Iterable[tuple],
        *,
        complete: bool = True,
        provenance: str = "generic",
        boundary: Iterable[int] = (),
    ) -> "ChamberGraph":
        keys = tuple(keys)
        if provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {provenance!r}")
        n = len(keys)
        seen: dict[tuple[int, int], Any] = {}
        for e in edges:
            a, b = int(e[0]), int(e[1])
            label = e[2] if len(e) > 2 else None
            if a == b:
                raise ChamberError(f"loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise ChamberError(f"edge ({a}, {b}) out of range")
            pair = (a, b) if a < b else (b, a)
            if pair in seen:
                if seen[pair] != label:
                    raise ChamberError(f"multi-edge {pair} with labels {seen[pair]!r}, {label!r}")
                continue
            seen[pair] = label
        triples = tuple((a, b, lab) for (a, b), lab in sorted(seen.items()))
        return cls(keys, triples, complete, provenance, frozenset(boundary))

    # -- derived structure -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.keys)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict:
        return {k: i for i, k in enumerate(self.keys)}

    @cached_property
    def _csr(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.n
        if not self.edges:
            return np.zeros(n + 1, dtype=np.int64), np.zeros(0, dtype=np.int64)
        e = np.array([(a, b) for a, b, _ in self.edges], dtype=np.int64)
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        order = np.lexsort((dst, src))
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return indptr, dst[order]

    @property
    def indptr(self) -> np.ndarray:
        return self._csr[0]

    @property
    def indices(self) -> np.ndarray:
        return self._csr[1]

    @cached_property
    def labels(self) -> dict[tuple[int, int], Any]:
        return {(a, b): lab for a, b, lab in self.edges}

    @cached_property
    def adjacency(self) -> list[frozenset]:
        ip, ix = self._csr
        return [frozenset(ix[ip[i] : ip[i + 1]].tolist()) for i in range(self.n)]

    def neighbors(self, v: int) -> np.ndarray:
        ip, ix = self._csr
        return ix[ip[v] : ip[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def is_regular(self) -> bool:
        d = self.degrees()
        return bool(len(d) == 0 or (d == d[0]).all())

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adjacency[a]

    def label(self, a: int, b: int):
        return self.labels[(a, b) if a < b else (b, a)]

    def id_of(self, key) -> int:
        return self.index[key]

    def is_connected(self) -> bool:
        from ._kernels import bfs_distances

        if self.n == 0:
            return True
        return bool((bfs_distances(self.indptr, self.indices, 0) >= 0).all())

    def without(self, removed: Iterable[int]) -> "ChamberGraph":
        """Induced subgraph on the remaining vertices (ids renumbered)."""
        gone = set(removed)
        keep = [i for i in range(self.n) if i not in gone]
        new_id = {old: new for new, old in enumerate(keep)}
        edges = [(new_id[a], new_id[b], lab) for a, b, lab in self.edges if a in new_id and b in new_id]
        return ChamberGraph.build([self.keys[i] for i in keep], edges, provenance="generic")

    # -- serialization -----------------------------------------------------

    def to_json(self, name: Callable[[Any], str] | None = None) -> dict:
        name = name or str
        doc = {
            "vertices": list(range(self.n)),
            "names": [name(k) for k in self.keys],
            "edges": [[a, b] if lab is None else [a, b, lab] for a, b, lab in self.edges],
            "complete": self.complete,
            "provenance": self.provenance,
        }
        if self.boundary:
            doc["boundary"] = sorted(self.boundary)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "ChamberGraph":
        vertices = doc["vertices"]
        if list(vertices) != list(range(len(vertices))):
            remap = {v: i for i, v in enumerate(vertices)}
        else:
            remap = None
        edges = []
        for e in doc["edges"]:
            a, b = (e[0], e[1]) if remap is None else (remap[e[0]], remap[e[1]])
            edges.append((a, b, e[2] if len(e) > 2 else None))
        return cls.build(
            range(len(vertices)),
            edges,
            complete=doc.get("complete", True),
            provenance=doc.get("provenance", "generic"),
            boundary=doc.get("boundary", ()),
        )


@dataclass(frozen=True)
class PureComplex:
    """Pure complex given by its facets, each a sorted vertex tuple."""

    dimension: int
    chambers: tuple

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], dimension: int | None = None) -> "PureComplex":
        canon = sorted({tuple(sorted(set(f))) for f in facets})
        if not canon:
            raise NotPure("complex has no facets")
        sizes = {len(f) for f in canon}
        if dimension is None:
            dimension = max(sizes) - 1
        bad = [f for f in canon if len(f) != dimension + 1]
        if bad:
            raise NotPure(f"facet {list(bad[0])} has {len(bad[0])} vertices, expected {dimension + 1}")
        return cls(dimension, tuple(canon))

    @property
    def vertices(self) -> list[int]:
        return sorted({v for c in self.chambers for v in c})

    def walls(self, chamber: int) -> list[tuple[int, tuple]]:
        """``(omitted_vertex, wall)`` for each wall of a chamber."""
        c = self.chambers[chamber]
        return [(v, c[:i] + c[i + 1 :]) for i, v in enumerate(c)]

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "chambers": [list(c) for c in self.chambers]}

    @classmethod
    def from_json(cls, doc: dict) -> "PureComplex":
        return cls.from_facets(doc["chambers"], doc.get("dimension"))


@dataclass(frozen=True)
class TypeLabeling:
    colors: dict

    def wall_color(self, chamber: Sequence[int], omitted: int) -> int:
        return self.colors[omitted]

    def is_proper(self, K: PureComplex) -> bool:
        return all(len({self.colors[v] for v in c}) == len(c) for c in K.chambers)


def chamber_graph_from_complex(K: PureComplex, labeling: TypeLabeling | None = None) -> ChamberGraph:
    if any(len(c) != K.dimension + 1 for c in K.chambers):
        raise NotPure("chambers of unequal size")
    if len(K.chambers) > max_vertices():
        raise ResourceLimit(f"{len(K.chambers)} chambers exceed the vertex cap")
    walls: dict[tuple, list[tuple[int, int]]] = defaultdict(list)
    for cid in range(len(K.chambers)):
        for omitted, wall in K.walls(cid):
            walls[wall].append((cid, omitted))
    edges = []
    for incident in walls.values():
        for (a, va), (b, _) in itertools.combinations(incident, 2):
            label = None if labeling is None else labeling.colors[va]
            edges.append((a, b, label))
    return ChamberGraph.build(K.chambers, edges, provenance="generic")


def _chamber_bfs_vertex_order(K: PureComplex) -> list[int]:
    G = chamber_graph_from_complex(K)
    order: list[int] = []
    placed: set[int] = set()
    visited = [False] * len(K.chambers)
    for start in range(len(K.chambers)):
        if visited[start]:
            continue
        visited[start] = True
        queue = deque([start])
        while queue:
            c = queue.popleft()
            for v in K.chambers[c]:
                if v not in placed:
                    placed.add(v)
                    order.append(v)
            for d in G.neighbors(c).tolist():
                if not visited[d]:
                    visited[d] = True
                    queue.append(d)
    return order


def balanced_type_labeling(K: PureComplex) -> TypeLabeling:
    """Color vertices with ``1..d+1`` so every chamber is rainbow.

    Vertices are visited in first-appearance order along a breadth-first
    sweep of the chamber graph (ties by id) and colors are tried in
    increasing order with backtracking.  Along that order each new vertex
    after the first chamber is usually forced, so the search stays linear
    on balanced inputs.
    """
    d1 = K.dimension + 1
    conflicts: dict[int, set[int]] = defaultdict(set)
    for c in K.chambers:
        for a, b in itertools.combinations(c, 2):
            conflicts[a].add(b)
            conflicts[b].add(a)
    order = _chamber_bfs_vertex_order(K)
    colors: dict[int, int] = {}
    nxt = [1] * len(order)
    i = 0
    while 0 <= i < len(order):
        v = order[i]
        colors.pop(v, None)
        used = {colors[u] for u in conflicts[v] if u in colors}
        c = nxt[i]
        while c <= d1 and c in used:
            c += 1
        if c > d1:
            nxt[i] = 1
            i -= 1
            if i >= 0:
                nxt[i] += 1
            continue
        colors[v] = c
        nxt[i] = c
        i += 1
    if i < 0:
        raise NotBalanced(f"no proper {d1}-coloring of the vertices exists")
    return TypeLabeling(dict(sorted(colors.items())))


# -- generic graph factories ------------------------------------------------


def from_edges(n: int, edges: Iterable[tuple[int, int]], provenance: str = "generic") -> ChamberGraph:
    return ChamberGraph.build(range(n), [(a, b, None) for a, b in edges], provenance=provenance)


def complete_graph(n: int) -> ChamberGraph:
    return from_edges(n, itertools.combinations(range(n), 2))


def path_graph(n: int) -> ChamberGraph:
    return from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> ChamberGraph:
    return from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def ternary_tree(depth: int) -> ChamberGraph:
    """Complete ternary tree: a root plus ``depth`` levels of 3-fold branching."""
    edges = []
    level = [0]
    n = 1
    for _ in range(depth):
        nxt = []
        for parent in level:
            for _ in range(3):
                edges.append((parent, n))
                nxt.append(n)
                n += 1
        level = nxt
    return from_edges(n, edges)


def bridged_blocks(k: int) -> ChamberGraph:
    """k-regular graph with vertex connectivity 2 (needs ``k >= 3``).

    Two copies of ``K_{k+1}`` each lose one edge ``{0, 1}``; the freed
    endpoints are cross-wired to the other copy.
    """
    if k < 3:
        raise ValueError("k must be at least 3")
    m = k + 1
    edges = []
    for base in (0, m):
        edges += [(base + a, base + b) for a, b in itertools.combinations(range(m), 2) if (a, b) != (0, 1)]
    edges += [(0, m), (1, m + 1)]
    return from_edges(2 * m, edges)


def simplex_boundary(d: int) -> PureComplex:
    """Boundary of the (d+1)-simplex: a pure d-complex with d+2 facets."""
    return PureComplex.from_facets(itertools.combinations(range(d + 2), d + 1))


def cross_polytope_boundary(d: int) -> PureComplex:
    """Boundary of the (d+1)-dimensional cross-polytope; antipodes are 2i, 2i+1."""
    facets = [[2 * i + bit for i, bit in enumerate(bits)] for bits in itertools.product((0, 1), repeat=d + 1)]
    return PureComplex.from_facets(facets)
