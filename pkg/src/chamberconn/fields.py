"""Prime fields and the subspace lattice of F_p^n.

Vectors are encoded as integers ``sum v_i p^(n-1-i)`` so that integer
order is lexicographic order on coordinate tuples.  Subspaces carry ids
in ``(dimension, reduced row-echelon basis)`` order.
"""

from __future__ import annotations

from functools import cached_property

from .errors import NotPrime, ResourceLimit
from ._config import max_vertices


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p

    def inv(self, a: int) -> int:
        return pow(a % self.p, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def rref(rows, p: int) -> tuple:
    """Reduced row-echelon form over F_p, zero rows dropped."""
    m = [list(r) for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    pivot_row = 0
    for col in range(ncols):
        piv = next((r for r in range(pivot_row, len(m)) if m[r][col] % p), None)
        if piv is None:
            continue
        m[pivot_row], m[piv] = m[piv], m[pivot_row]
        inv = pow(m[pivot_row][col], p - 2, p)
        m[pivot_row] = [(x * inv) % p for x in m[pivot_row]]
        for r in range(len(m)):
            if r != pivot_row and m[r][col] % p:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[pivot_row])]
        pivot_row += 1
        if pivot_row == len(m):
            break
    return tuple(tuple(r) for r in m[:pivot_row])


def gaussian_binomial(n: int, k: int, p: int) -> int:
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def flag_count(n: int, p: int) -> int:
    """Number of complete flags of F_p^n (the p-factorial of n)."""
    out = 1
    for i in range(1, n + 1):
        out *= (p**i - 1) // (p - 1)
    return out


class SubspaceTable:
    """Every subspace of F_p^n, with containment, spans and meets."""

    def __init__(self, n: int, p: int, cap: int | None = None):
        self.field = PrimeField(p)
        self.n, self.p = n, p
        total = sum(gaussian_binomial(n, k, p) for k in range(n + 1))
        if total > (max_vertices() if cap is None else cap):
            raise ResourceLimit(f"F_{p}^{n} has {total} subspaces, above the cap")
        self.size = p**n
        self.vectors = [self.decode(c) for c in range(self.size)]
        layers = [{frozenset([0])}]
        for _ in range(n):
            nxt = set()
            for X in layers[-1]:
                for v in range(1, self.size):
                    if v not in X:
                        nxt.add(self._span_with(X, v))
            layers.append(nxt)
        entries = []
        for dim, layer in enumerate(layers):
            for X in layer:
                entries.append((dim, self._basis_of(X), X))
        entries.sort(key=lambda e: (e[0], e[1]))
        self.dims = [e[0] for e in entries]
        self.bases = [e[1] for e in entries]
        self.sets = [e[2] for e in entries]
        self.id_of_set = {X: i for i, X in enumerate(self.sets)}
        self.zero = 0
        self.full = len(entries) - 1

    def decode(self, code: int) -> tuple:
        out = []
        for _ in range(self.n):
            out.append(code % self.p)
            code //= self.p
        return tuple(reversed(out))

    def encode(self, vec) -> int:
        code = 0
        for x in vec:
            code = code * self.p + (x % self.p)
        return code

    def _add(self, a: int, b: int, c: int = 1) -> int:
        va, vb = self.vectors[a], self.vectors[b]
        return self.encode([x + c * y for x, y in zip(va, vb)])

    def _span_with(self, X: frozenset, v: int) -> frozenset:
        return frozenset(self._add(x, v, c) for x in X for c in range(self.p))

    def _basis_of(self, X: frozenset) -> tuple:
        return rref([self.vectors[c] for c in sorted(X)], self.p)

    def __len__(self) -> int:
        return len(self.sets)

    def ids_of_dim(self, d: int) -> list[int]:
        return [i for i, k in enumerate(self.dims) if k == d]

    @cached_property
    def span_vec(self) -> list[list[int]]:
        """``span_vec[sid][code]``: id of the span of the subspace and a vector."""
        table = []
        for X in self.sets:
            row = []
            for v in range(self.size):
                row.append(self.id_of_set[X] if v in X else self.id_of_set[self._span_with(X, v)])
            table.append(row)
        return table

    @cached_property
    def upper_covers(self) -> list[list[int]]:
        out = []
        for sid, X in enumerate(self.sets):
            out.append(sorted({self.span_vec[sid][v] for v in range(self.size) if v not in X}))
        return out

    def contains(self, sid: int, code: int) -> bool:
        return code in self.sets[sid]

    def leq(self, a: int, b: int) -> bool:
        return self.sets[a] <= self.sets[b]

    def meet(self, a: int, b: int) -> int:
        return self.id_of_set[self.sets[a] & self.sets[b]]

    def join(self, a: int, b: int) -> int:
        out = a
        for row in self.bases[b]:
            out = self.span_vec[out][self.encode(row)]
        return out

    def span_of(self, codes) -> int:
        out = self.zero
        for c in codes:
            out = self.span_vec[out][c]
        return out

    def matrix(self, sid: int) -> list[list[int]]:
        return [list(r) for r in self.bases[sid]]


_tables: dict[tuple[int, int], SubspaceTable] = {}


def subspace_table(n: int, p: int) -> SubspaceTable:
    key = (n, p)
    if key not in _tables:
        _tables[key] = SubspaceTable(n, p)
    return _tables[key]
