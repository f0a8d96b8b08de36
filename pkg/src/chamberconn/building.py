"""Type-A buildings: complete flags of F_p^n.

A chamber (flag) is the tuple of subspace ids ``(X_1, ..., X_{n-1})`` from
a :class:`~chamberconn.fields.SubspaceTable`; since subspace ids follow
row-echelon order, tuple equality is flag equality.  Wall types are
``1..n-1``: the type-``s`` wall of a flag omits ``X_s``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property

from ._config import max_vertices
from .complex import ChamberGraph
from .connectivity import PathFamily, verify_disjoint_family
from .coxeter import dihedral_path, type_a
from .errors import InternalOverlap, InvalidAdjacency, NonUniform, NotDistanceTwo, ResourceLimit
from .fields import PrimeField, flag_count, subspace_table

Flag = tuple


class FlagBuilding:
    """All complete flags of F_p^n with typed adjacency."""

    def __init__(self, n: int, p: int, cap: int | None = None):
        if n < 2:
            raise ValueError("n must be at least 2")
        self.field = PrimeField(p)
        self.n, self.p = n, p
        cap = max_vertices() if cap is None else cap
        count = flag_count(n, p)
        if count > cap:
            raise ResourceLimit(f"flag_building({n}, {p}) has {count} chambers, above the cap of {cap}")
        self.table = subspace_table(n, p)
        self.types = tuple(range(1, n))
        self.coxeter = type_a(n - 1)
        flags: list[Flag] = []
        top = self.table.full

        def extend(prefix: tuple, last: int) -> None:
            if len(prefix) == n - 1:
                flags.append(prefix)
                return
            for nxt in self.table.upper_covers[last]:
                if nxt != top:
                    extend(prefix + (nxt,), nxt)

        extend((), self.table.zero)
        self.chambers: tuple = tuple(sorted(flags))
        self.index = {c: i for i, c in enumerate(self.chambers)}
        self._walls: dict[tuple, list[int]] = defaultdict(list)
        for cid, c in enumerate(self.chambers):
            for s in self.types:
                self._walls[(s, c[: s - 1] + c[s:])].append(cid)
        self._apartments: dict = {}

    def __repr__(self):
        return f"FlagBuilding(n={self.n}, p={self.p}, chambers={len(self.chambers)})"

    def wall(self, C: Flag, s: int) -> tuple:
        return (s, C[: s - 1] + C[s:])

    def neighbours(self, C: Flag, s: int) -> list[Flag]:
        """N(C, s): chambers sharing the type-s wall of C, C excluded."""
        return [self.chambers[i] for i in self._walls[self.wall(C, s)] if self.chambers[i] != C]

    def adjacency_type(self, C: Flag, D: Flag) -> int | None:
        diff = [i for i in range(self.n - 1) if C[i] != D[i]]
        return diff[0] + 1 if len(diff) == 1 else None

    @cached_property
    def graph(self) -> ChamberGraph:
        edges = []
        for (s, _), members in self._walls.items():
            for a, b in itertools.combinations(members, 2):
                edges.append((a, b, s))
        return ChamberGraph.build(self.chambers, edges, provenance="building")

    def matrices(self, C: Flag) -> list[list[list[int]]]:
        return [self.table.matrix(sid) for sid in C]

    def flag_from_matrices(self, mats) -> Flag:
        out = []
        for rows in mats:
            codes = [self.table.encode(r) for r in rows]
            out.append(self.table.span_of(codes))
        flag = tuple(out)
        if flag not in self.index:
            raise InvalidAdjacency(f"matrices do not form a complete flag of F_{self.p}^{self.n}")
        return flag

    def to_json(self) -> dict:
        return {"n": self.n, "p": self.p}

    # -- apartments -------------------------------------------------------

    def common_apartment(self, C: Flag, D: Flag) -> "Apartment":
        key = (C, D)
        if key not in self._apartments:
            self._apartments[key] = _common_apartment(self, C, D)
        return self._apartments[key]


def flag_building(n: int, p: int, cap: int | None = None) -> FlagBuilding:
    return FlagBuilding(n, p, cap)


@dataclass(frozen=True)
class BuildingParameters:
    q: dict
    q_total: int

    @property
    def thick(self) -> bool:
        return all(v >= 2 for v in self.q.values())


def building_parameters(building: FlagBuilding) -> BuildingParameters:
    q = {}
    for s in building.types:
        sizes = {len(building.neighbours(C, s)) for C in building.chambers}
        if len(sizes) != 1:
            raise NonUniform(f"|N(C,{s})| takes values {sorted(sizes)}")
        q[s] = sizes.pop()
    return BuildingParameters(q, sum(q.values()))


class Apartment:
    """The n! flags spanned by orderings of a frame of n lines.

    The chamber for a permutation ``perm`` (a tuple of frame positions) has
    ``X_i = span(frame[perm[0]], ..., frame[perm[i-1]])``; swapping
    positions ``i-1`` and ``i`` changes only ``X_i``, so right
    multiplication by the generator of type ``i`` in S_n is that swap.
    The identity ordering is the base chamber.
    """

    def __init__(self, building: FlagBuilding, frame: tuple):
        self.building = building
        self.frame = tuple(frame)
        t = building.table
        self.lines = tuple(t.span_vec[t.zero][v] for v in self.frame)
        self._by_perm: dict[tuple, Flag] = {}

    def chamber(self, perm) -> Flag:
        perm = tuple(perm)
        if perm not in self._by_perm:
            t = self.building.table
            sid = t.zero
            out = []
            for pos in perm[:-1]:
                sid = t.span_vec[sid][self.frame[pos]]
                out.append(sid)
            self._by_perm[perm] = tuple(out)
        return self._by_perm[perm]

    @property
    def base(self) -> Flag:
        return self.chamber(range(len(self.frame)))

    @cached_property
    def chambers(self) -> tuple:
        return tuple(self.chamber(p) for p in itertools.permutations(range(len(self.frame))))

    @cached_property
    def _perm_of(self) -> dict:
        return {self.chamber(p): p for p in itertools.permutations(range(len(self.frame)))}

    def contains(self, C: Flag) -> bool:
        return C in self._perm_of

    def perm_of(self, C: Flag) -> tuple:
        return self._perm_of[C]

    def word_chamber(self, word, base: Flag) -> Flag:
        """Image of the Coxeter element ``word`` when ``base`` plays ``e``."""
        perm = list(self.perm_of(base))
        for g in word:
            perm[g], perm[g + 1] = perm[g + 1], perm[g]
        return self.chamber(perm)

    def graph(self) -> ChamberGraph:
        G = self.building.graph
        ids = sorted(G.index[c] for c in self.chambers)
        keep = set(ids)
        local = {old: new for new, old in enumerate(ids)}
        edges = [(local[a], local[b], lab) for a, b, lab in G.edges if a in keep and b in keep]
        return ChamberGraph.build([G.keys[i] for i in ids], edges, provenance="building")


def _common_apartment(building: FlagBuilding, C: Flag, D: Flag) -> Apartment:
    # Frame adapted to both flags: for each step X_{i-1} < X_i find the
    # first level j at which X_i meets Y_j outside X_{i-1}, then take the
    # least vector of X_i & Y_j avoiding X_{i-1} + (X_i & Y_{j-1}).
    t = building.table
    X = (t.zero,) + tuple(C) + (t.full,)
    Y = (t.zero,) + tuple(D) + (t.full,)
    n = building.n
    frame = []
    for i in range(1, n + 1):
        j = next(j for j in range(1, n + 1) if not t.sets[t.meet(X[i], Y[j])] <= t.sets[X[i - 1]])
        avoid = t.sets[t.join(X[i - 1], t.meet(X[i], Y[j - 1]))]
        cell = t.sets[t.meet(X[i], Y[j])]
        frame.append(min(v for v in cell if v not in avoid))
    A = Apartment(building, tuple(frame))
    assert A.base == C and A.contains(D), "frame is not adapted to both flags"
    return A


def common_apartment(building: FlagBuilding, C: Flag, D: Flag) -> Apartment:
    return building.common_apartment(C, D)


def _dihedral_words(building: FlagBuilding, s: int, t: int) -> tuple:
    return dihedral_path(building.coxeter, s - 1, t - 1).vertices


def _fan_paths(building: FlagBuilding, B: Flag, C: Flag, s: int, t: int, order=None) -> list[tuple]:
    targets = sorted(building.neighbours(B, t))
    if s == t:
        return [(C,) if D == C else (C, D) for D in targets]
    words = _dihedral_words(building, s, t)
    if abs(s - t) >= 2:
        return [tuple(building.common_apartment(C, D).word_chamber(w, B) for w in words) for D in targets]
    seconds = sorted(building.neighbours(C, t))
    if order is not None:
        seconds = [seconds[i] for i in order]
    paths = []
    for E, D in zip(seconds, targets):
        path = tuple(building.common_apartment(E, D).word_chamber(w, B) for w in words)
        if path[1] != E:
            raise InternalOverlap("matched chamber is not the second step of its gallery")
        paths.append(path)
    return paths


def _fan_orders(building: FlagBuilding, s: int, t: int, q: int):
    # Only non-commuting types leave a choice: the matching of N(C, t)
    # against N(B, t).
    if abs(s - t) == 1:
        return itertools.permutations(range(q))
    return [None]


def path_fan(building: FlagBuilding, B: Flag, C: Flag, s: int, t: int, order=None) -> PathFamily:
    """One C-D path for every D in N(B, t), avoiding B, disjoint away from C.

    ``order`` permutes the matching of N(C, t) to N(B, t) when s and t do
    not commute; the default matches both in sorted order.
    """
    if building.adjacency_type(B, C) != s:
        raise InvalidAdjacency(f"chamber C is not in N(B, {s})")
    targets = sorted(building.neighbours(B, t))
    paths = _fan_paths(building, B, C, s, t, order)
    for path, D in zip(paths, targets):
        if path[0] != C or path[-1] != D:
            raise InternalOverlap("apartment gallery has wrong endpoints")
    fam = PathFamily(C, None, tuple(paths), "path-fan", tuple(targets), {"B": B, "s": s, "t": t})
    cert = verify_disjoint_family(building.graph, fam, forbidden={B})
    if not cert.ok:
        raise InternalOverlap(f"path fan failed certification: {cert}")
    return fam


def common_neighbours(building: FlagBuilding, C: Flag, D: Flag) -> list[Flag]:
    G = building.graph
    a, b = G.index[C], G.index[D]
    return [G.keys[i] for i in sorted(G.adjacency[a] & G.adjacency[b])]


def building_disjoint_paths(building: FlagBuilding, C: Flag, D: Flag) -> PathFamily:
    """q(Δ) internally disjoint C-D galleries for chambers at distance two.

    For each type s the fans from C and from D into N(B, s) are joined at
    their common ends.  Galleries of one type are disjoint by construction,
    but a C-side gallery towards D's panel and a D-side gallery towards C's
    panel can run around the same rank-2 residue, so the fan matchings are
    chosen by backtracking until the whole family is disjoint.
    """
    G = building.graph
    if C == D or G.has_edge(G.index[C], G.index[D]):
        raise NotDistanceTwo("chambers are equal or adjacent")
    mids = common_neighbours(building, C, D)
    if not mids:
        raise NotDistanceTwo("chambers have no common neighbour")
    B = mids[0]
    s_c = building.adjacency_type(B, C)
    s_d = building.adjacency_type(B, D)

    def options(s: int):
        q = len(building.neighbours(B, s))
        for oc in _fan_orders(building, s_c, s, q):
            from_c = _fan_paths(building, B, C, s_c, s, oc)
            for od in _fan_orders(building, s_d, s, q):
                from_d = {p[-1]: p for p in _fan_paths(building, B, D, s_d, s, od)}
                # D's own panel: the C-side gallery to D would close the
                # same rank-2 residue as the D-side gallery to C, so the
                # short route through B takes its place.
                group = [
                    (C, B, D) if p[-1] == D else p + tuple(reversed(from_d[p[-1]][:-1]))
                    for p in from_c
                ]
                inner = [x for p in group for x in p[1:-1]]
                if len(set(inner)) == len(inner):
                    yield group, set(inner)

    chosen: list[list[tuple]] = []

    def search(k: int, used: set) -> bool:
        if k == len(building.types):
            return True
        for group, inner in options(building.types[k]):
            if used.isdisjoint(inner):
                chosen.append(group)
                if search(k + 1, used | inner):
                    return True
                chosen.pop()
        return False

    if not search(0, set()):
        raise InternalOverlap("no choice of fan matchings gives a disjoint family")
    paths = [p for group in chosen for p in group]
    groups = [s for s, group in zip(building.types, chosen) for _ in group]
    fam = PathFamily(C, D, tuple(paths), "building", tuple(groups), {"B": B})
    cert = verify_disjoint_family(G, fam)
    if not cert.ok:
        raise InternalOverlap(f"building family failed certification: {cert}")
    return fam
