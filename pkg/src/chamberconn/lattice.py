"""Finite geometric lattices, their maximal-chain graphs, and disjoint
galleries between chains at distance two.

Elements are integer ids with ``0`` the bottom and ``N - 1`` the top.
Lattices built here number their elements in ``(rank, key)`` order, so
"first in id order" is a canonical, reproducible choice.  A maximal chain
is stored as the tuple ``(x_1, ..., x_{n-1})`` of its proper elements;
index ``i - 1`` holds the element of rank ``i``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._config import max_vertices
from .complex import ChamberGraph
from .connectivity import PathFamily, verify_disjoint_family
from .errors import ChamberError, InternalOverlap, NotDistanceTwo, RankTooSmall, ResourceLimit
from .fields import rref, subspace_table

MaximalChain = tuple


class GeometricLattice:
    """A finite bounded poset given by its cover relation.

    Nothing here assumes the poset really is a geometric lattice; use
    :func:`validate_geometric` for that.  ``join`` and ``meet`` hold ``-1``
    where no least upper (greatest lower) bound exists.
    """

    def __init__(self, n_elements: int, covers, labels=None, name: str = "lattice"):
        N = int(n_elements)
        if N < 2:
            raise ChamberError("a lattice needs distinct bottom and top")
        self.size = N
        self.name = name
        self.labels = list(labels) if labels is not None else [str(i) for i in range(N)]
        up: list[list[int]] = [[] for _ in range(N)]
        down: list[list[int]] = [[] for _ in range(N)]
        for a, b in covers:
            a, b = int(a), int(b)
            if not (0 <= a < N and 0 <= b < N) or a == b:
                raise ChamberError(f"bad cover pair ({a}, {b})")
            up[a].append(b)
            down[b].append(a)
        self.upper = [sorted(set(u)) for u in up]
        self.lower = [sorted(set(d)) for d in down]
        self.covers = sorted((a, b) for a in range(N) for b in self.upper[a])
        self.bottom, self.top = 0, N - 1

        order = self._topological_order()
        leq = np.eye(N, dtype=bool)
        for x in reversed(order):
            for y in self.upper[x]:
                leq[x] |= leq[y]
        self.leq = leq
        if not leq[self.bottom].all() or not leq[:, self.top].all():
            raise ChamberError("element 0 must be the bottom and the last element the top")

        # shortest and longest chain length from the bottom
        lo = [0] * N
        hi = [0] * N
        for x in order:
            if x != self.bottom:
                lo[x] = min(lo[d] for d in self.lower[x]) + 1
                hi[x] = max(hi[d] for d in self.lower[x]) + 1
        self._short, self.rank = lo, hi
        self.n = hi[self.top]
        self.join, self.meet = self._bound_tables()

    def _topological_order(self) -> list[int]:
        indeg = [len(d) for d in self.lower]
        queue = [x for x in range(self.size) if indeg[x] == 0]
        out = []
        while queue:
            x = queue.pop()
            out.append(x)
            for y in self.upper[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    queue.append(y)
        if len(out) != self.size:
            raise ChamberError("cover relation has a cycle")
        return out

    def _bound_tables(self) -> tuple[np.ndarray, np.ndarray]:
        N = self.size
        rank = np.asarray(self.rank)
        by_rank = np.argsort(rank, kind="stable")
        join = np.full((N, N), -1, dtype=np.int64)
        meet = np.full((N, N), -1, dtype=np.int64)
        L = self.leq
        for a in range(N):
            ub = L[a][None, :] & L[a:]
            lb = L[:, a][None, :] & L[:, a:].T
            for k, b in enumerate(range(a, N)):
                cands = by_rank[ub[k][by_rank]]
                if len(cands) and (L[cands[0]] >= ub[k]).all():
                    join[a, b] = join[b, a] = cands[0]
                cands = by_rank[lb[k][by_rank]]
                if len(cands) and (L[:, cands[-1]] >= lb[k]).all():
                    meet[a, b] = meet[b, a] = cands[-1]
        return join, meet

    def __repr__(self):
        return f"GeometricLattice({self.name!r}, elements={self.size}, rank={self.n})"

    def __len__(self) -> int:
        return self.size

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def j(self, a: int, b: int) -> int:
        return int(self.join[a, b])

    def m(self, a: int, b: int) -> int:
        return int(self.meet[a, b])

    @cached_property
    def atoms(self) -> list[int]:
        return list(self.upper[self.bottom])

    def of_rank(self, r: int) -> list[int]:
        return [x for x in range(self.size) if self.rank[x] == r]

    def open_interval(self, a: int, b: int) -> list[int]:
        """Elements strictly between ``a`` and ``b``, in id order."""
        mask = self.leq[a] & self.leq[:, b]
        mask[a] = mask[b] = False
        return [int(x) for x in np.flatnonzero(mask)]

    def covered(self, a: int, b: int) -> bool:
        return b in self.upper[a]

    # -- chains ------------------------------------------------------------

    def is_chain(self, chain) -> bool:
        full = (self.bottom,) + tuple(chain) + (self.top,)
        return len(chain) == self.n - 1 and all(self.covered(a, b) for a, b in zip(full, full[1:]))

    def maximal_chains(self, cap: int | None = None) -> list[MaximalChain]:
        cap = max_vertices() if cap is None else cap
        out: list[MaximalChain] = []

        def walk(prefix: tuple, last: int) -> None:
            if last == self.top:
                out.append(prefix[:-1])
                if len(out) > cap:
                    raise ResourceLimit(f"more than {cap} maximal chains")
                return
            for y in self.upper[last]:
                walk(prefix + (y,), y)

        walk((), self.bottom)
        return sorted(out)

    @cached_property
    def chamber_graph(self) -> ChamberGraph:
        return lattice_chamber_graph(self)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"elements": self.size, "rank": list(self.rank), "covers": [list(c) for c in self.covers]}

    @classmethod
    def from_json(cls, doc: dict) -> "GeometricLattice":
        P = cls(doc["elements"], doc["covers"], doc.get("labels"), doc.get("name", "lattice"))
        if "rank" in doc and list(doc["rank"]) != list(P.rank):
            raise ChamberError("declared ranks disagree with the cover relation")
        return P

    @classmethod
    def from_covers(cls, n_elements: int, covers, labels=None, name: str = "lattice") -> "GeometricLattice":
        return cls(n_elements, covers, labels, name)


def _from_keyed(elements: dict, up, name: str, fmt) -> GeometricLattice:
    """Number ``elements`` (key -> rank) canonically and wire up ``up``."""
    keys = sorted(elements, key=lambda k: (elements[k], k))
    index = {k: i for i, k in enumerate(keys)}
    covers = [(index[k], index[c]) for k in keys for c in up(k)]
    return GeometricLattice(len(keys), covers, [fmt(k) for k in keys], name)


def boolean_lattice(n: int) -> GeometricLattice:
    elements = {tuple(s): len(s) for r in range(n + 1) for s in itertools.combinations(range(1, n + 1), r)}
    up = lambda s: [tuple(sorted(s + (e,))) for e in range(1, n + 1) if e not in s]
    fmt = lambda s: "{" + ",".join(map(str, s)) + "}"
    return _from_keyed(elements, up, f"boolean({n})", fmt)


def partition_lattice(n: int) -> GeometricLattice:
    """Set partitions of {1..n} under refinement; rank = n - #blocks."""
    finest = tuple((i,) for i in range(1, n + 1))
    seen = {finest}
    stack = [finest]

    def merges(part):
        out = []
        for a, b in itertools.combinations(range(len(part)), 2):
            rest = [blk for k, blk in enumerate(part) if k not in (a, b)]
            out.append(tuple(sorted(rest + [tuple(sorted(part[a] + part[b]))])))
        return out

    while stack:
        part = stack.pop()
        for nxt in merges(part):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    elements = {part: n - len(part) for part in seen}
    fmt = lambda part: "|".join("".join(map(str, b)) for b in part)
    # key order: within a rank, sort by the block tuple
    return _from_keyed(elements, lambda part: sorted(set(merges(part))), f"partition({n})", fmt)


def subspace_lattice(n: int, p: int) -> GeometricLattice:
    t = subspace_table(n, p)
    labels = ["[" + ";".join("".join(map(str, r)) for r in t.bases[s]) + "]" for s in range(len(t))]
    covers = [(a, b) for a in range(len(t)) for b in t.upper_covers[a]]
    return GeometricLattice(len(t), covers, labels, f"subspace({n},{p})")


def flats_lattice(matrix, p: int) -> GeometricLattice:
    """Flats of the column matroid of ``matrix`` over F_p."""
    cols = [tuple(int(row[j]) % p for row in matrix) for j in range(len(matrix[0]))]
    m = len(cols)

    def rank_of(idx) -> int:
        return len(rref([cols[j] for j in idx], p)) if idx else 0

    def closure(idx) -> tuple:
        r = rank_of(idx)
        return tuple(j for j in range(m) if j in idx or rank_of(tuple(idx) + (j,)) == r)

    bottom = closure(())
    flats = {bottom: 0}
    stack = [bottom]
    ups: dict[tuple, set] = defaultdict(set)
    while stack:
        F = stack.pop()
        for j in range(m):
            if j not in F:
                G = closure(F + (j,))
                ups[F].add(G)
                if G not in flats:
                    flats[G] = rank_of(G)
                    stack.append(G)
    fmt = lambda F: "{" + ",".join(map(str, F)) + "}"
    return _from_keyed(flats, lambda F: sorted(ups[F]), "flats", fmt)


def build_lattice(kind: str, *args) -> GeometricLattice:
    builders = {
        "boolean": boolean_lattice,
        "partition": partition_lattice,
        "subspace": subspace_lattice,
        "flats": flats_lattice,
    }
    if kind not in builders:
        raise ChamberError(f"unknown lattice kind {kind!r}")
    P = builders[kind](*args)
    report = validate_geometric(P)
    if not report.ok:
        raise InternalOverlap(f"{P.name} is not geometric: {report.message}")
    return P


def parse_lattice_spec(text: str) -> GeometricLattice:
    """``boolean:4``, ``partition:5``, ``subspace:3,2``."""
    kind, _, rest = text.partition(":")
    args = [int(a) for a in rest.split(",") if a.strip()]
    return build_lattice(kind.strip(), *args)


# -- validation -----------------------------------------------------------------


@dataclass(frozen=True)
class GeometricReport:
    ok: bool
    failed: str | None = None
    counterexample: tuple = ()
    message: str = ""

    def to_json(self) -> dict:
        return {"ok": self.ok, "failed": self.failed, "counterexample": list(self.counterexample), "message": self.message}


def validate_geometric(P: GeometricLattice) -> GeometricReport:
    for x in range(P.size):
        if P._short[x] != P.rank[x]:
            return GeometricReport(False, "graded", (x,), f"maximal chains below {P.labels[x]} have different lengths")
    for a, b in itertools.combinations(range(P.size), 2):
        if P.join[a, b] < 0:
            return GeometricReport(False, "lattice", (a, b), f"{P.labels[a]} and {P.labels[b]} have no join")
        if P.meet[a, b] < 0:
            return GeometricReport(False, "lattice", (a, b), f"{P.labels[a]} and {P.labels[b]} have no meet")
    for x in range(P.size):
        for a in P.atoms:
            if not P.leq[a, x]:
                y = P.j(x, a)
                if P.rank[y] != P.rank[x] + 1:
                    return GeometricReport(
                        False, "semimodular", (x, a), f"{P.labels[x]} is not covered by its join with {P.labels[a]}"
                    )
    for x in range(P.size):
        acc = P.bottom
        for a in P.atoms:
            if P.leq[a, x]:
                acc = P.j(acc, a)
        if acc != x:
            return GeometricReport(False, "atomistic", (x,), f"{P.labels[x]} is not a join of atoms")
    return GeometricReport(True)


# -- local width --------------------------------------------------------------


@dataclass(frozen=True)
class LocalWidthReport:
    q: int
    witness: int
    full_min: int
    full_witness: tuple

    def to_json(self) -> dict:
        return {"q": self.q, "witness": self.witness, "full_min": self.full_min, "full_witness": list(self.full_witness)}


def interval_sizes(P: GeometricLattice) -> np.ndarray:
    """``out[x, y]`` = number of elements strictly between x and y (x <= y)."""
    M = P.leq.astype(np.int64)
    return M @ M - 2


def q_of_lattice(P: GeometricLattice) -> LocalWidthReport:
    if P.n < 2:
        raise RankTooSmall(f"rank {P.n} < 2")
    rank = np.asarray(P.rank)
    between = interval_sizes(P)
    rank2 = [x for x in range(P.size) if rank[x] == 2]
    witness = min(rank2, key=lambda x: (between[P.bottom, x], x))
    q = int(between[P.bottom, witness]) - 1
    pairs = np.argwhere(P.leq & (rank[None, :] - rank[:, None] == 2))
    sizes = between[pairs[:, 0], pairs[:, 1]]
    k = int(np.argmin(sizes))
    full_min = int(sizes[k])
    if full_min != q + 1:
        raise InternalOverlap(f"bottom intervals give {q + 1} but some length-2 interval has {full_min}")
    return LocalWidthReport(q, witness, full_min, (int(pairs[k, 0]), int(pairs[k, 1])))


# -- chamber graph --------------------------------------------------------------


def lattice_chamber_graph(P: GeometricLattice, cap: int | None = None) -> ChamberGraph:
    chains = P.maximal_chains(cap)
    walls: dict[tuple, list[int]] = defaultdict(list)
    for cid, c in enumerate(chains):
        for r in range(1, P.n):
            walls[(r, c[: r - 1] + c[r:])].append(cid)
    edges = []
    for (r, _), members in walls.items():
        for a, b in itertools.combinations(members, 2):
            edges.append((a, b, r))
    return ChamberGraph.build(chains, edges, provenance="lattice")


@dataclass(frozen=True)
class DistanceTwoWitness:
    i1: int
    i2: int
    B: MaximalChain
    swapped: bool


def _replace(chain: tuple, updates: dict) -> tuple:
    out = list(chain)
    for r, v in updates.items():
        out[r - 1] = v
    return tuple(out)


def distance2_witness(P: GeometricLattice, C: MaximalChain, D: MaximalChain) -> DistanceTwoWitness:
    C, D = tuple(C), tuple(D)
    for chain in (C, D):
        if not P.is_chain(chain):
            raise ChamberError(f"{chain} is not a maximal chain")
    diff = [i + 1 for i in range(P.n - 1) if C[i] != D[i]]
    if len(diff) != 2:
        raise NotDistanceTwo(f"chains differ at {len(diff)} ranks")
    i1, i2 = diff
    B = _replace(C, {i1: D[i1 - 1]})
    if P.is_chain(B):
        return DistanceTwoWitness(i1, i2, B, False)
    B = _replace(D, {i1: C[i1 - 1]})
    if P.is_chain(B):
        return DistanceTwoWitness(i1, i2, B, True)
    raise NotDistanceTwo("chains differ at two adjacent ranks but have no common neighbour")


# -- disjoint galleries -----------------------------------------------------------


def _pick(cands: list[int], q: int, what: str) -> list[int]:
    if len(cands) < q:
        raise InternalOverlap(f"only {len(cands)} choices for {what}, need {q}")
    return cands[:q]


def _meeting_pairs(P: GeometricLattice, lo: int, hi: int, a: int, b: int, avoid: int, q: int) -> list[tuple]:
    """q triples (z, w, z∧w): z covers a, w covers b, both below hi.

    Here lo ⋖ a, b ⋖ avoid = a ∨ b and hi sits two ranks above a.  The
    meets z∧w must cover lo, and z's and w's are pairwise distinct.  Each
    z is compatible with at least q choices of w, so a matching of size q
    exists; it is found by augmenting paths in id order.
    """
    zs = [z for z in P.open_interval(a, hi) if z != avoid]
    ws = [w for w in P.open_interval(b, hi) if w != avoid]
    target = P.rank[lo] + 1
    ok = {z: [w for w in ws if w != z and P.rank[P.m(z, w)] == target] for z in zs}
    match_w: dict[int, int] = {}

    def augment(z: int, seen: set) -> bool:
        for w in ok[z]:
            if w in seen:
                continue
            seen.add(w)
            if w not in match_w or augment(match_w[w], seen):
                match_w[w] = z
                return True
        return False

    chosen = []
    for z in zs:
        if len(chosen) == q:
            break
        if augment(z, set()):
            chosen.append(z)
    if len(chosen) < q:
        raise InternalOverlap("no matching of meeting lines of the required size")
    by_z = {z: w for w, z in match_w.items() if z in chosen}
    return [(z, by_z[z], P.m(z, by_z[z])) for z in chosen]


def _walk(start: tuple, steps) -> tuple:
    out = [start]
    for r, v in steps:
        out.append(_replace(out[-1], {r: v}))
    return tuple(out)


def _group(P: GeometricLattice, C: tuple, D: tuple, I: int, J: int, r: int, q: int) -> list[tuple]:
    """q galleries from C to D whose first step changes rank r."""
    x = {k: v for k, v in enumerate((P.bottom,) + C + (P.top,))}
    y = {k: v for k, v in enumerate((P.bottom,) + D + (P.top,))}
    finish = [(I, y[I]), (J, y[J])]
    paths = []
    if abs(r - I) >= 2 and abs(r - J) >= 2:
        for z in _pick([z for z in P.open_interval(x[r - 1], x[r + 1]) if z != x[r]], q, "z"):
            paths.append(_walk(C, [(r, z)] + finish + [(r, x[r])]))
    elif r == I - 1:
        zs = _pick([z for z in P.open_interval(x[r - 1], x[I]) if z != x[r]], q, "z")
        ws = _pick([w for w in P.open_interval(x[r - 1], y[I]) if w != x[r]], q, "w")
        for z, w in zip(zs, ws):
            paths.append(_walk(C, [(r, z), (I, P.j(z, w)), (r, w)] + finish + [(r, x[r])]))
    elif r == I and J > I + 1:
        paths.append(_walk(C, finish))
        for z in _pick([z for z in P.open_interval(x[I - 1], x[I + 1]) if z not in (x[I], y[I])], q - 1, "z"):
            paths.append(_walk(C, [(I, z), (J, y[J]), (I, y[I])]))
    elif r == J and J > I + 1:
        paths.append(_walk(C, [(J, y[J]), (I, y[I])]))
        for z in _pick([z for z in P.open_interval(x[J - 1], x[J + 1]) if z not in (x[J], y[J])], q - 1, "z"):
            paths.append(_walk(C, [(J, z), (I, y[I]), (J, y[J])]))
    elif r == I:  # J == I + 1
        paths.append(_walk(C, finish))
        ls = _pick([v for v in P.open_interval(y[I], x[J + 1]) if v not in (x[J], y[J])], q - 1, "l")
        zs = _pick([z for z in P.open_interval(x[I - 1], x[J]) if z not in (x[I], y[I])], q - 1, "z")
        for z, l in zip(zs, ls):
            p = next(v for v in P.open_interval(x[I - 1], l) if v != y[I])
            m = P.j(z, p)
            paths.append(_walk(C, [(I, z), (J, m), (I, p), (J, l), (I, y[I]), (J, y[J])]))
    elif r == J:  # J == I + 1
        for w in _pick([w for w in P.open_interval(x[I - 1], y[J]) if w != y[I]], q, "w"):
            paths.append(_walk(C, [(J, P.j(x[I], w)), (I, w), (J, y[J]), (I, y[I])]))
    elif r == I + 1 == J - 1:
        zmu = _meeting_pairs(P, x[I - 1], x[J], x[I], y[I], x[r], q)
        ws = _pick([w for w in P.open_interval(y[I], y[J]) if w != x[r]], q, "w")
        for (z, m, u), w in zip(zmu, ws):
            top = P.j(w, m)
            paths.append(_walk(C, [(r, z), (I, u), (r, m), (I, y[I]), (J, top), (r, w), (J, y[J]), (r, x[r])]))
    elif r == I + 1:  # r < J - 1
        for z, w, u in _meeting_pairs(P, x[I - 1], x[r + 1], x[I], y[I], x[r], q):
            paths.append(_walk(C, [(r, z), (I, u), (r, w)] + finish + [(r, x[r])]))
    elif r == J - 1:  # r > I + 1
        zs = _pick([z for z in P.open_interval(x[r - 1], x[J]) if z != x[r]], q, "z")
        ws = _pick([w for w in P.open_interval(x[r - 1], y[J]) if w != x[r]], q, "w")
        for z, w in zip(zs, ws):
            paths.append(_walk(C, [(r, z), (J, P.j(z, w)), (r, w), (J, y[J]), (I, y[I]), (r, x[r])]))
    elif r == J + 1:
        low = y[J - 1]
        for z, v, m in _meeting_pairs(P, low, x[r + 1], x[J], y[J], x[r], q):
            paths.append(_walk(C, [(r, z), (I, y[I]), (J, m), (r, v), (J, y[J]), (r, x[r])]))
    else:  # pragma: no cover - the cases above are exhaustive
        raise InternalOverlap(f"no construction for r={r}, i1={I}, i2={J}")
    return paths


def _case_name(I: int, J: int, r: int) -> int:
    if abs(r - I) >= 2 and abs(r - J) >= 2:
        return 1
    if r == I - 1:
        return 2
    if r == I:
        return 3 if J > I + 1 else 4
    if r == J:
        return 10 if J > I + 1 else 6
    if r == I + 1 == J - 1:
        return 5
    if r == I + 1:
        return 7
    if r == J - 1:
        return 8
    return 9


def lattice_disjoint_paths(P: GeometricLattice, C: MaximalChain, D: MaximalChain, q: int | None = None) -> PathFamily:
    """q(n-1) internally disjoint C-D galleries, q per starting rank."""
    C, D = tuple(C), tuple(D)
    wit = distance2_witness(P, C, D)
    q = q_of_lattice(P).q if q is None else q
    src, dst = (D, C) if wit.swapped else (C, D)
    I, J = wit.i1, wit.i2
    paths, groups, cases = [], [], []
    for r in range(1, P.n):
        for path in _group(P, src, dst, I, J, r, q):
            paths.append(tuple(reversed(path)) if wit.swapped else path)
            groups.append(r)
            cases.append(_case_name(I, J, r))
    for path, r in zip(paths, groups):
        for chain in path[1:-1]:
            moved = {k + 1 for k in range(P.n - 1) if chain[k] != C[k]}
            if not moved <= {r, I, J}:
                raise InternalOverlap(f"gallery changes ranks {sorted(moved)}")
    uses_b = any(wit.B in p[1:-1] for p in paths)
    meta = {"i1": I, "i2": J, "B": wit.B, "swapped": wit.swapped, "q": q, "cases": cases, "contains_B": uses_b}
    fam = PathFamily(C, D, tuple(paths), "lattice", tuple(groups), meta)
    cert = verify_disjoint_family(P.chamber_graph, fam)
    if not cert.ok:
        raise InternalOverlap(f"lattice family failed certification: {cert}")
    if len(paths) != q * (P.n - 1):
        raise InternalOverlap(f"built {len(paths)} paths, expected {q * (P.n - 1)}")
    return fam
