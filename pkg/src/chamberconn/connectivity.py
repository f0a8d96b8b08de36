"""Menger-style connectivity engine and certification of path families."""

from __future__ import annotations

import weakref
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Sequence

import numpy as np

from ._kernels import FlowNetwork, bfs_distances, distance_two_pairs, use_numba
from .complex import ChamberGraph
from .errors import Disconnected, IncompleteGraph, SameVertex, TooFewVertices


@dataclass(frozen=True)
class PathFamily:
    """Paths between chambers, stored as sequences of chamber keys.

    ``target`` is ``None`` for a fan: paths leave ``source`` towards
    distinct endpoints and may only meet at ``source``.  ``groups`` tags
    each path (generator type, starting rank, ...) when the constructor
    has a natural grouping.
    """

    source: Hashable
    target: Hashable | None
    paths: tuple
    provenance: str = ""
    groups: tuple | None = None
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.paths)

    def lengths(self) -> list[int]:
        return [len(p) - 1 for p in self.paths]

    def interior_vertices(self) -> set:
        return {x for p in self.paths for x in p[1:-1]}

    def to_ids(self, G: ChamberGraph) -> list[list[int]]:
        return [[G.index[x] for x in p] for p in self.paths]

    def to_json(self, G: ChamberGraph) -> dict:
        doc = {
            "source": G.index[self.source],
            "target": None if self.target is None else G.index[self.target],
            "paths": self.to_ids(G),
            "provenance": self.provenance,
        }
        if self.groups is not None:
            doc["groups"] = list(self.groups)
        return doc

    @classmethod
    def from_json(cls, doc: dict, G: ChamberGraph) -> "PathFamily":
        def key(i):
            if not isinstance(i, int) or not 0 <= i < G.n:
                return ("<unknown>", i)
            return G.keys[i]

        return cls(
            key(doc["source"]),
            None if doc.get("target") is None else key(doc["target"]),
            tuple(tuple(key(i) for i in p) for p in doc["paths"]),
            doc.get("provenance", ""),
            tuple(doc["groups"]) if doc.get("groups") is not None else None,
        )


@dataclass(frozen=True)
class Certificate:
    source: Any
    target: Any
    n_paths: int
    lengths: tuple
    ok: bool = True

    def to_json(self) -> dict:
        return {"ok": True, "n_paths": self.n_paths, "lengths": list(self.lengths)}


@dataclass(frozen=True)
class Violation:
    kind: str
    paths: tuple
    vertex: Any = None
    message: str = ""
    ok: bool = False

    def to_json(self, G: ChamberGraph | None = None) -> dict:
        vertex = self.vertex
        if G is not None and vertex in G.index:
            vertex = G.index[vertex]
        return {"ok": False, "kind": self.kind, "paths": list(self.paths), "vertex": _jsonable(vertex), "message": self.message}


def _jsonable(x):
    if isinstance(x, (int, str, float)) or x is None:
        return x
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    return str(x)


def verify_disjoint_family(G: ChamberGraph, F: PathFamily, forbidden: Iterable = ()) -> Certificate | Violation:
    """Check that ``F`` is a family of internally disjoint paths in ``G``.

    Returns the first violation found, scanning paths in order.
    """
    forbidden = set(forbidden)
    fan = F.target is None
    owner: dict[Any, int] = {}
    direct = None
    ends: dict[Any, int] = {}
    for i, path in enumerate(F.paths):
        if len(path) == 0:
            return Violation("empty", (i,), message="path has no vertices")
        for x in path:
            if x not in G.index:
                return Violation("unknown-vertex", (i,), x, "vertex is not in the graph")
        if path[0] != F.source:
            return Violation("bad-endpoint", (i,), path[0], "path does not start at the source")
        if not fan and path[-1] != F.target:
            return Violation("bad-endpoint", (i,), path[-1], "path does not end at the target")
        if not fan and len(path) < 2:
            return Violation("empty", (i,), message="source-target path needs at least one edge")
        if len(set(path)) != len(path):
            rep = next(x for k, x in enumerate(path) if x in path[:k])
            return Violation("repeated-vertex", (i,), rep, "path revisits a vertex")
        for a, b in zip(path, path[1:]):
            if not G.has_edge(G.index[a], G.index[b]):
                return Violation("non-edge", (i,), (a, b), "consecutive vertices are not adjacent")
        inner = path[1:] if fan else path[1:-1]
        for x in inner:
            if x in forbidden:
                return Violation("forbidden-vertex", (i,), x, "path visits a forbidden vertex")
            if x in owner:
                return Violation("shared-vertex", (owner[x], i), x, "paths share a vertex")
            owner[x] = i
        if fan:
            if path[-1] in ends:
                return Violation("shared-vertex", (ends[path[-1]], i), path[-1], "two fan paths end at the same vertex")
            ends[path[-1]] = i
        elif len(path) == 2:
            if direct is not None:
                return Violation("duplicate", (direct, i), message="direct edge used twice")
            direct = i
    return Certificate(F.source, F.target, len(F.paths), tuple(F.lengths()))


# -- flow engine ------------------------------------------------------------

_networks: "weakref.WeakKeyDictionary[ChamberGraph, dict]" = weakref.WeakKeyDictionary()


def flow_network(G: ChamberGraph) -> FlowNetwork:
    jit = use_numba()
    cache = _networks.setdefault(G, {})
    if jit not in cache:
        cache[jit] = FlowNetwork(G.indptr, G.indices, jit=jit)
    return cache[jit]


@dataclass(frozen=True)
class LocalConnectivity:
    value: int
    family: PathFamily
    cut: tuple
    adjacent: bool
    lower_bound: bool = False


def _interior_vertices(G: ChamberGraph, margin: int) -> np.ndarray:
    """Mask of vertices farther than ``margin`` from every boundary vertex."""
    mask = np.ones(G.n, dtype=bool)
    for b in G.boundary:
        dist = bfs_distances(G.indptr, G.indices, b)
        mask &= ~((dist >= 0) & (dist <= margin))
    return mask


def local_connectivity(
    G: ChamberGraph, u: int, v: int, *, allow_incomplete: bool = False, margin: int = 1
) -> LocalConnectivity:
    """Maximum number of internally disjoint u-v paths, with a witness
    family and a minimum u-v vertex cut from the same flow."""
    if u == v:
        raise SameVertex(f"u and v are both {u}")
    bounded = not G.complete
    if bounded:
        if not allow_incomplete:
            raise IncompleteGraph("graph is a truncated ball; pass allow_incomplete to get a lower bound")
        interior = _interior_vertices(G, margin)
        if not (interior[u] and interior[v]):
            raise IncompleteGraph(f"vertices {u}, {v} lie within {margin} of the ball boundary")
    net = flow_network(G)
    value, cap = net.max_flow(u, v)
    succ = net.flow_successors(cap)
    paths = []
    for b in sorted(succ.get(u, [])):
        path = [u, b]
        while path[-1] != v:
            path.append(succ[path[-1]][0])
        paths.append(tuple(G.keys[i] for i in path))
    reach = net.reachable(cap, u)
    cut = tuple(i for i in range(G.n) if i not in (u, v) and reach[2 * i] and not reach[2 * i + 1])
    fam = PathFamily(G.keys[u], G.keys[v], tuple(paths), "max-flow")
    return LocalConnectivity(value, fam, cut, G.has_edge(u, v), bounded)


def _flows(G: ChamberGraph, pairs: np.ndarray, limit: int, jobs: int) -> np.ndarray:
    net = flow_network(G)
    if jobs <= 1 or len(pairs) < 2 * jobs:
        return net.batch_flows(pairs, limit)
    chunks = np.array_split(pairs, jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(lambda c: net.batch_flows(c, limit), chunks))
    return np.concatenate(parts)


@dataclass
class ConnectivityReport:
    method: str
    lower: int
    upper: int
    passed: bool | None = None
    k: int | None = None
    witness_pair: tuple | None = None
    separator: tuple | None = None
    pairs_checked: int = 0
    bounded: bool = False

    @property
    def kappa(self) -> int | None:
        return self.lower if self.lower == self.upper else None

    def to_json(self) -> dict:
        doc = {
            "method": self.method,
            "lower": self.lower,
            "upper": self.upper,
            "kappa": self.kappa,
            "pairs_checked": self.pairs_checked,
            "bounded": self.bounded,
        }
        if self.k is not None:
            doc["k"] = self.k
            doc["passed"] = self.passed
        if self.witness_pair is not None:
            doc["witness_pair"] = list(self.witness_pair)
        if self.separator is not None:
            doc["separator"] = list(self.separator)
        return doc


def separates(G: ChamberGraph, separator: Sequence[int]) -> bool:
    if G.n - len(set(separator)) < 2:
        return False
    return not G.without(separator).is_connected()


def liu_check(G: ChamberGraph, k: int, *, jobs: int = 1, allow_incomplete: bool = False, margin: int = 1) -> ConnectivityReport:
    """Certify k-connectivity from the distance-two pairs alone.

    On a truncated ball (``allow_incomplete``) only pairs whose endpoints
    are farther than ``margin`` from the boundary are examined and the
    report is flagged ``bounded``.
    """
    if G.n <= k:
        raise TooFewVertices(f"{G.n} vertices, need more than {k}")
    if not G.is_connected():
        raise Disconnected("graph is not connected")
    bounded = not G.complete
    if bounded and not allow_incomplete:
        raise IncompleteGraph("graph is a truncated ball; pass allow_incomplete")
    pairs = distance_two_pairs(G.indptr, G.indices)
    if bounded:
        interior = _interior_vertices(G, margin)
        pairs = pairs[interior[pairs[:, 0]] & interior[pairs[:, 1]]]
    values = _flows(G, pairs, k, jobs)
    bad = np.flatnonzero(values < k)
    min_degree = int(G.degrees().min())
    if len(bad) == 0:
        return ConnectivityReport("liu", k, min_degree, True, k, pairs_checked=len(pairs), bounded=bounded)
    u, v = (int(x) for x in pairs[bad[0]])
    local = local_connectivity(G, u, v, allow_incomplete=allow_incomplete, margin=margin)
    if not bounded:
        assert separates(G, local.cut), "min cut failed to separate"
    return ConnectivityReport(
        "liu", 1, local.value, False, k, (u, v), local.cut, pairs_checked=int(bad[0]) + 1, bounded=bounded
    )


def vertex_connectivity(G: ChamberGraph, *, jobs: int = 1) -> ConnectivityReport:
    """Exact vertex connectivity.

    Uses a minimum-degree vertex ``v``: every minimum separator either
    misses ``v`` (then it separates ``v`` from some non-neighbour) or
    contains it (then it separates two non-adjacent neighbours of ``v``).
    """
    if not G.complete:
        raise IncompleteGraph("exact connectivity needs a complete graph")
    n = G.n
    if n < 2:
        raise TooFewVertices("need at least two vertices")
    deg = G.degrees()
    if G.num_edges == n * (n - 1) // 2:
        return ConnectivityReport("exact", n - 1, n - 1)
    v = int(np.argmin(deg))
    nbrs = sorted(G.adjacency[v])
    pairs = [(v, w) for w in range(n) if w != v and w not in G.adjacency[v]]
    pairs += [(x, y) for i, x in enumerate(nbrs) for y in nbrs[i + 1 :] if not G.has_edge(x, y)]
    pairs = np.array(sorted((min(a, b), max(a, b)) for a, b in pairs), dtype=np.int64)
    values = _flows(G, pairs, int(deg[v]), jobs)
    best = int(np.argmin(values))
    u, w = (int(x) for x in pairs[best])
    local = local_connectivity(G, u, w)
    assert local.value == int(values[best])
    assert separates(G, local.cut) or local.value == 0
    return ConnectivityReport("exact", local.value, local.value, witness_pair=(u, w), separator=local.cut, pairs_checked=len(pairs))


def distance(G: ChamberGraph, u: int, v: int) -> int:
    return int(bfs_distances(G.indptr, G.indices, u)[v])


def distance_two(G: ChamberGraph) -> np.ndarray:
    return distance_two_pairs(G.indptr, G.indices)
