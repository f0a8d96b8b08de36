"""Independent reference implementations used to derive expected values.

Nothing here imports the package under test except for plain data
containers; each oracle recomputes its answer from first principles.
"""

from __future__ import annotations

import itertools
from collections import deque


# -- Coxeter groups as permutation groups ----------------------------------------


def perm_generators_a(n: int) -> list[tuple]:
    """S_{n+1} acting on positions; generator i swaps i and i+1."""
    gens = []
    for i in range(n):
        p = list(range(n + 1))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(tuple(p))
    return gens


def perm_generators_b(n: int) -> list[tuple]:
    """Signed permutations of n letters as permutations of 2n points.

    Point ``2k`` is ``+k`` and ``2k+1`` is ``-k``.  Generators 0..n-2 swap
    adjacent letters, generator n-1 flips the sign of the last letter.
    """
    gens = []
    for i in range(n - 1):
        p = list(range(2 * n))
        for s in (0, 1):
            p[2 * i + s], p[2 * (i + 1) + s] = p[2 * (i + 1) + s], p[2 * i + s]
        gens.append(tuple(p))
    p = list(range(2 * n))
    p[2 * (n - 1)], p[2 * (n - 1) + 1] = p[2 * (n - 1) + 1], p[2 * (n - 1)]
    gens.append(tuple(p))
    return gens


def perm_generators_dihedral(m: int) -> list[tuple]:
    """Reflections of a regular m-gon acting on its vertices."""
    return [tuple((-i) % m for i in range(m)), tuple((1 - i) % m for i in range(m))]


def compose(p: tuple, q: tuple) -> tuple:
    """``p`` then ``q`` as right actions: the element ``pq``."""
    return tuple(p[q[i]] for i in range(len(p)))


def word_to_perm(gens: list[tuple], word) -> tuple:
    out = tuple(range(len(gens[0])))
    for s in word:
        out = compose(out, gens[s])
    return out


def cayley_bfs(gens: list[tuple]) -> tuple[dict, list[tuple]]:
    """Distances from the identity and the edge list of the Cayley graph."""
    e = tuple(range(len(gens[0])))
    dist = {e: 0}
    queue = deque([e])
    edges = set()
    while queue:
        g = queue.popleft()
        for s, h in enumerate(gens):
            gh = compose(g, h)
            if gh not in dist:
                dist[gh] = dist[g] + 1
                queue.append(gh)
            edges.add((frozenset((g, gh)), s))
    return dist, sorted(edges, key=repr)


def inversions(p) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j])


# -- brute-force connectivity ------------------------------------------------------


def adjacency(n: int, edges) -> list[set]:
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def connected_without(adj: list[set], removed: set, a: int, b: int) -> bool:
    if a in removed or b in removed:
        return False
    seen = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        if x == b:
            return True
        for y in adj[x]:
            if y not in removed and y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def induced_paths(adj: list[set], u: int, v: int) -> list[tuple]:
    """All chordless u-v paths (a maximum disjoint family can use only these)."""
    out = []

    def extend(path: list[int], on: set) -> None:
        x = path[-1]
        if x == v:
            out.append(tuple(path))
            return
        for y in sorted(adj[x]):
            if y in on:
                continue
            # chordless: y may touch only x among earlier vertices; the
            # direct u-v edge is a separate path, not a chord
            if any(z in adj[y] for z in path[:-1] if not (y == v and z == u)):
                continue
            path.append(y)
            on.add(y)
            extend(path, on)
            on.discard(y)
            path.pop()

    extend([u], {u})
    return out


def max_disjoint_paths(adj: list[set], u: int, v: int) -> int:
    paths = induced_paths(adj, u, v)
    interiors = [frozenset(p[1:-1]) for p in paths]
    direct = any(len(p) == 2 for p in paths)
    interiors = [s for s in interiors if s]
    best = 0

    def search(start: int, used: frozenset, count: int) -> None:
        nonlocal best
        best = max(best, count)
        bound = min(len(adj[u]), len(adj[v])) - (1 if direct else 0)
        if best >= bound:
            return
        for i in range(start, len(interiors)):
            if used.isdisjoint(interiors[i]):
                search(i + 1, used | interiors[i], count + 1)

    search(0, frozenset(), 0)
    return best + (1 if direct else 0)


def min_separator_size(adj: list[set], u: int, v: int) -> int | None:
    """Smallest vertex set avoiding u, v whose removal separates them;
    ``None`` when u and v are adjacent (no separator exists)."""
    if v in adj[u]:
        return None
    others = [x for x in range(len(adj)) if x not in (u, v)]
    for k in range(len(others) + 1):
        for S in itertools.combinations(others, k):
            if not connected_without(adj, set(S), u, v):
                return k
    raise AssertionError("unreachable")


def brute_vertex_connectivity(adj: list[set]) -> int:
    n = len(adj)
    for k in range(n - 1):
        for S in itertools.combinations(range(n), k):
            rest = [x for x in range(n) if x not in S]
            removed = set(S)
            if any(not connected_without(adj, removed, rest[0], y) for y in rest[1:]):
                return k
    return n - 1


# -- finite geometry ---------------------------------------------------------------


def all_subspaces(n: int, p: int) -> dict[int, list[frozenset]]:
    """Subspaces of F_p^n as frozensets of vector tuples, by dimension.

    Each is grown by adding one vector at a time and closing under all
    F_p-linear combinations.
    """
    vectors = list(itertools.product(range(p), repeat=n))
    zero = tuple([0] * n)

    def span(gens) -> frozenset:
        out = set()
        for coeffs in itertools.product(range(p), repeat=len(gens)):
            out.add(tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) % p for i in range(n)))
        return frozenset(out)

    layers = {0: [frozenset([zero])]}
    gens_of = {frozenset([zero]): ()}
    for d in range(1, n + 1):
        found = {}
        for X in layers[d - 1]:
            for v in vectors:
                if v not in X:
                    Y = span(gens_of[X] + (v,))
                    if Y not in found:
                        found[Y] = gens_of[X] + (v,)
        gens_of.update(found)
        layers[d] = list(found)
    return layers


def complete_flags(n: int, p: int) -> list[tuple]:
    layers = all_subspaces(n, p)
    flags = [()]
    for d in range(1, n):
        flags = [f + (Y,) for f in flags for Y in layers[d] if not f or f[-1] < Y]
    return flags


# -- posets -----------------------------------------------------------------------------


def set_partitions(n: int) -> list[frozenset]:
    def rec(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for part in rec(rest):
            for i in range(len(part)):
                yield part[:i] + [part[i] | {first}] + part[i + 1 :]
            yield part + [frozenset([first])]

    return [frozenset(frozenset(b) for b in part) for part in rec(list(range(1, n + 1)))]


def refines(a: frozenset, b: frozenset) -> bool:
    return all(any(x <= y for y in b) for x in a)


class Poset:
    """A finite poset given by an explicit order predicate."""

    def __init__(self, elements, le, rank):
        self.elements = list(elements)
        self.le = le
        self.rank = rank

    def covers(self, a, b) -> bool:
        return a != b and self.le(a, b) and self.rank(b) == self.rank(a) + 1

    def open_interval(self, a, b) -> list:
        return [z for z in self.elements if z != a and z != b and self.le(a, z) and self.le(z, b)]

    def maximal_chains(self) -> list[tuple]:
        bottom = min(self.elements, key=self.rank)
        top = max(self.elements, key=self.rank)
        chains = [(bottom,)]
        out = []
        while chains:
            c = chains.pop()
            if c[-1] == top:
                out.append(c)
                continue
            chains.extend(c + (z,) for z in self.elements if self.covers(c[-1], z))
        return out

    def local_width_q(self) -> int:
        """min over all length-2 intervals of their size, minus one."""
        sizes = [
            len(self.open_interval(a, b))
            for a in self.elements
            for b in self.elements
            if self.le(a, b) and self.rank(b) == self.rank(a) + 2
        ]
        return min(sizes) - 1


def boolean_poset(n: int) -> Poset:
    elems = [frozenset(s) for r in range(n + 1) for s in itertools.combinations(range(1, n + 1), r)]
    return Poset(elems, lambda a, b: a <= b, len)


def partition_poset(n: int) -> Poset:
    return Poset(set_partitions(n), refines, lambda a: n - len(a))


def subspace_poset(n: int, p: int) -> Poset:
    layers = all_subspaces(n, p)
    elems = [X for d in range(n + 1) for X in layers[d]]
    dim = {X: d for d in layers for X in layers[d]}
    return Poset(elems, lambda a, b: a <= b, dim.__getitem__)
