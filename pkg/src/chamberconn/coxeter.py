"""Coxeter systems, their word problem, Cayley graphs and the dihedral
path fans between chambers at distance two.

Group elements are ShortLex-least reduced words, stored as tuples of
0-based generator indices; the identity is ``()``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from ._config import max_vertices
from .complex import ChamberGraph
from .connectivity import PathFamily, verify_disjoint_family
from .errors import ChamberError, InfiniteOrder, InternalOverlap, NotDistanceTwo, NotTwoFinite, ResourceLimit

INF = math.inf

Word = tuple


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix of orders ``m[s][t]`` of ``st``; ``INF`` for infinite."""

    m: tuple

    def __post_init__(self):
        m = tuple(tuple(row) for row in self.m)
        object.__setattr__(self, "m", m)
        n = len(m)
        if n < 1:
            raise ChamberError("a Coxeter matrix needs at least one generator")
        for s in range(n):
            if len(m[s]) != n:
                raise ChamberError("Coxeter matrix must be square")
            if m[s][s] != 1:
                raise ChamberError(f"diagonal entry m[{s}][{s}] must be 1")
            for t in range(n):
                if m[s][t] != m[t][s]:
                    raise ChamberError(f"m[{s}][{t}] != m[{t}][{s}]")
                if s != t and not (m[s][t] == INF or (int(m[s][t]) == m[s][t] and m[s][t] >= 2)):
                    raise ChamberError(f"m[{s}][{t}] = {m[s][t]} is not >= 2 or infinite")

    @property
    def rank(self) -> int:
        return len(self.m)

    def order(self, s: int, t: int):
        return self.m[s][t]

    def is_two_finite(self) -> bool:
        return all(x != INF for row in self.m for x in row)

    @classmethod
    def from_json(cls, doc: dict) -> "CoxeterMatrix":
        n = doc["rank"]
        m = [[INF if x == 0 else int(x) for x in row] for row in doc["m"]]
        if len(m) != n:
            raise ChamberError(f"rank {n} does not match a {len(m)}-row matrix")
        for s in range(n):
            m[s][s] = 1
        return cls(m)

    def to_json(self) -> dict:
        return {"rank": self.rank, "m": [[0 if x == INF else int(x) for x in row] for row in self.m]}


def type_a(n: int) -> CoxeterMatrix:
    """A_n, i.e. the symmetric group S_{n+1} on adjacent transpositions."""
    return CoxeterMatrix([[1 if s == t else 3 if abs(s - t) == 1 else 2 for t in range(n)] for s in range(n)])


def type_b(n: int) -> CoxeterMatrix:
    """B_n with ``m[n-2][n-1] = 4``."""
    m = [list(row) for row in type_a(n).m]
    if n >= 2:
        m[n - 2][n - 1] = m[n - 1][n - 2] = 4
    return CoxeterMatrix(m)


def dihedral(order) -> CoxeterMatrix:
    """I_2(order); pass ``INF`` for the infinite dihedral group."""
    return CoxeterMatrix([[1, order], [order, 1]])


def affine_a(n: int) -> CoxeterMatrix:
    """Affine Ã_n (n >= 2): n+1 generators in a cycle, all bonds of order 3."""
    k = n + 1
    return CoxeterMatrix(
        [[1 if s == t else 3 if (s - t) % k in (1, k - 1) else 2 for t in range(k)] for s in range(k)]
    )


# -- word problem -------------------------------------------------------------


def _braid_neighbours(m: tuple, word: Word) -> Iterable[Word]:
    n = len(word)
    for i in range(n - 1):
        s, t = word[i], word[i + 1]
        if s == t:
            continue
        k = m[s][t]
        if k == INF or i + k > n:
            continue
        k = int(k)
        if all(word[i + j] == (s if j % 2 == 0 else t) for j in range(k)):
            swapped = tuple(t if j % 2 == 0 else s for j in range(k))
            yield word[:i] + swapped + word[i + k :]


@lru_cache(maxsize=200_000)
def _braid_class(m: tuple, word: Word) -> frozenset:
    """All words reachable from ``word`` by braid moves."""
    seen = {word}
    stack = [word]
    while stack:
        w = stack.pop()
        for v in _braid_neighbours(m, w):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return frozenset(seen)


@lru_cache(maxsize=200_000)
def _times_generator(m: tuple, w: Word, s: int) -> Word:
    # w is a normal form; exchange condition: ws is shorter iff some
    # reduced word for w ends in s.
    for v in _braid_class(m, w):
        if v and v[-1] == s:
            return min(_braid_class(m, v[:-1]), key=lambda x: x)
    return min(_braid_class(m, w + (s,)))


def _reduce(m: tuple, word: Word) -> Word:
    w: Word = ()
    for s in word:
        w = _times_generator(m, w, s)
    return w


def normalize_word(system: CoxeterMatrix, word: Iterable[int]) -> Word:
    """ShortLex-least reduced word for the element spelled by ``word``."""
    word = tuple(int(s) for s in word)
    for s in word:
        if not 0 <= s < system.rank:
            raise ChamberError(f"generator index {s} out of range for rank {system.rank}")
    return _reduce(system.m, word)


def multiply(system: CoxeterMatrix, u: Word, v: Word) -> Word:
    w = normalize_word(system, u)
    for s in v:
        w = _times_generator(system.m, w, s)
    return w


def inverse(system: CoxeterMatrix, w: Word) -> Word:
    return normalize_word(system, tuple(reversed(w)))


def word_length(system: CoxeterMatrix, w: Word) -> int:
    return len(normalize_word(system, w))


def is_reduced(system: CoxeterMatrix, word: Sequence[int]) -> bool:
    return len(normalize_word(system, word)) == len(word)


def format_word(w: Word) -> str:
    return "e" if not w else "".join(f"s{s + 1}" for s in w)


def parse_word(text: str) -> Word:
    """Parse ``"e"``, ``"s1s2s1"`` (1-based) or ``"0,1,0"`` (0-based)."""
    text = text.strip()
    if text in ("", "e"):
        return ()
    if text.startswith("s"):
        parts = re.findall(r"s(\d+)", text)
        if "".join(f"s{p}" for p in parts) != text:
            raise ChamberError(f"cannot parse word {text!r}")
        return tuple(int(p) - 1 for p in parts)
    return tuple(int(p) for p in text.split(","))


# -- Cayley graph -------------------------------------------------------------


def cayley_ball(system: CoxeterMatrix, radius: int, cap: int | None = None) -> ChamberGraph:
    """Ball of the given radius around ``e`` in the Cayley graph.

    Vertices are in ShortLex order; the edge ``{w, ws}`` carries label
    ``s``.  The graph is marked complete when no word of length
    ``radius`` extends to a longer one, i.e. the ball is the whole group.
    """
    cap = max_vertices() if cap is None else cap
    m = system.m
    layers = [[()]]
    edges: list[tuple[Word, Word, int]] = []
    total = 1
    for length in range(radius):
        nxt = set()
        for w in layers[-1]:
            for s in range(system.rank):
                ws = _times_generator(m, w, s)
                if len(ws) == length + 1:
                    nxt.add(ws)
                    edges.append((w, ws, s))
        if not nxt:
            break
        total += len(nxt)
        if total > cap:
            raise ResourceLimit(f"Cayley ball exceeds the cap of {cap} vertices")
        layers.append(sorted(nxt))
    complete = all(len(_times_generator(m, w, s)) < len(w) for w in layers[-1] for s in range(system.rank))
    keys = [w for layer in layers for w in layer]
    index = {w: i for i, w in enumerate(keys)}
    boundary = () if complete else [index[w] for w in layers[-1]]
    return ChamberGraph.build(
        keys,
        [(index[a], index[b], s) for a, b, s in edges],
        complete=complete,
        provenance="coxeter",
        boundary=boundary,
    )


# -- dihedral paths and fans ----------------------------------------------------


@dataclass(frozen=True)
class DihedralPath:
    s: int
    t: int
    vertices: tuple

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


def _alternating(a: int, b: int, n: int) -> Word:
    return tuple(a if i % 2 == 0 else b for i in range(n))


def dihedral_path(system: CoxeterMatrix, s: int, t: int) -> DihedralPath:
    """The gallery s - st - sts - ... - tst - ts - t (2k - 1 chambers)."""
    if s == t:
        raise ChamberError("dihedral path needs two distinct generators")
    k = system.order(s, t)
    if k == INF:
        raise InfiniteOrder(f"s{s + 1}s{t + 1} has infinite order")
    k = int(k)
    words = [_alternating(s, t, i) for i in range(1, k + 1)]
    words += [_alternating(t, s, i) for i in range(k - 1, 0, -1)]
    return DihedralPath(s, t, tuple(normalize_word(system, w) for w in words))


def common_neighbours(system: CoxeterMatrix, w: Word, w2: Word) -> list[Word]:
    out = []
    for a in range(system.rank):
        u = _times_generator(system.m, w, a)
        if len(multiply(system, inverse(system, u), w2)) == 1:
            out.append(u)
    return sorted(set(out), key=lambda x: (len(x), x))


def _certify(paths: list[tuple], source, target, system: CoxeterMatrix, provenance: str, groups) -> PathFamily:
    fam = PathFamily(source, target, tuple(paths), provenance, tuple(groups))
    verts = sorted({x for p in paths for x in p}, key=lambda x: (len(x), x))
    index = {x: i for i, x in enumerate(verts)}
    edges = []
    for x in verts:
        for s in range(system.rank):
            y = _times_generator(system.m, x, s)
            if y in index and index[x] < index[y]:
                edges.append((index[x], index[y], s))
    local = ChamberGraph.build(verts, edges, provenance="coxeter")
    cert = verify_disjoint_family(local, fam)
    if not cert.ok:
        raise InternalOverlap(f"{provenance} family failed certification: {cert}")
    return fam


def coxeter_disjoint_fan(system: CoxeterMatrix, w: Sequence[int], w2: Sequence[int]) -> PathFamily:
    """|S| internally disjoint galleries between chambers at distance two.

    Translating so the common neighbour is ``e`` (the ShortLex-least one
    when there are two), the endpoints become generators ``s`` and ``t``
    and the family is ``s - e - t``, ``P_{s,t}`` and ``P_{s,s'}`` followed
    by ``P_{s',t}`` for every other generator ``s'``.
    """
    if not system.is_two_finite():
        raise NotTwoFinite("every product of two generators must have finite order")
    w, w2 = normalize_word(system, w), normalize_word(system, w2)
    if w == w2 or len(multiply(system, inverse(system, w), w2)) == 1:
        raise NotDistanceTwo("chambers are equal or adjacent")
    mids = common_neighbours(system, w, w2)
    if not mids:
        raise NotDistanceTwo("chambers have no common neighbour")
    u = mids[0]
    u_inv = inverse(system, u)
    (s,) = multiply(system, u_inv, w)
    (t,) = multiply(system, u_inv, w2)

    frame_paths = [((s,), (), (t,))]
    groups: list = ["identity"]
    frame_paths.append(dihedral_path(system, s, t).vertices)
    groups.append("dihedral")
    for s2 in range(system.rank):
        if s2 in (s, t):
            continue
        first = dihedral_path(system, s, s2).vertices
        second = dihedral_path(system, s2, t).vertices
        frame_paths.append(first + second[1:])
        groups.append(f"via s{s2 + 1}")
    paths = [tuple(multiply(system, u, x) for x in p) for p in frame_paths]
    fam = _certify(paths, w, w2, system, "coxeter-fan", groups)
    return PathFamily(fam.source, fam.target, fam.paths, fam.provenance, fam.groups, {"middle": u, "s": s, "t": t})
