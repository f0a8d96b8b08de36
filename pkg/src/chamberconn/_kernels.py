"""Hot loops: unit-capacity max flow on vertex-split digraphs and
distance-two pair enumeration.

The flow kernels are written against plain indexing so the same source
runs under ``numba.njit`` (on numpy arrays) and as ordinary Python (on
lists, which index much faster than numpy scalars).  Setting
``CHAMBERCONN_NUMBA=0`` selects the fallback; so does a missing numba.
"""

from __future__ import annotations

import numpy as np

from ._config import numba_requested

try:  # pragma: no cover - exercised implicitly
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False


def _max_flow(node_ptr, arc_head, arc_rev, cap, source, sink, limit, parent, queue):
    # Edmonds-Karp with unit augmentations; cap is updated in place.
    # A direct source -> sink arc counts as a single path.
    n_nodes = len(node_ptr) - 1
    for a in range(node_ptr[source], node_ptr[source + 1]):
        if arc_head[a] == sink and cap[a] > 1:
            cap[a] = 1
    flow = 0
    while limit < 0 or flow < limit:
        for i in range(n_nodes):
            parent[i] = -2
        parent[source] = -1
        head = 0
        tail = 0
        queue[tail] = source
        tail += 1
        found = False
        while head < tail and not found:
            x = queue[head]
            head += 1
            for a in range(node_ptr[x], node_ptr[x + 1]):
                if cap[a] > 0:
                    y = arc_head[a]
                    if parent[y] == -2:
                        parent[y] = a
                        if y == sink:
                            found = True
                            break
                        queue[tail] = y
                        tail += 1
        if not found:
            break
        y = sink
        while y != source:
            a = parent[y]
            r = arc_rev[a]
            cap[a] -= 1
            cap[r] += 1
            y = arc_head[r]
        flow += 1
    return flow


def _residual_reach(node_ptr, arc_head, cap, source, seen, queue):
    n_nodes = len(node_ptr) - 1
    for i in range(n_nodes):
        seen[i] = 0
    seen[source] = 1
    head = 0
    tail = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        x = queue[head]
        head += 1
        for a in range(node_ptr[x], node_ptr[x + 1]):
            if cap[a] > 0:
                y = arc_head[a]
                if seen[y] == 0:
                    seen[y] = 1
                    queue[tail] = y
                    tail += 1
    return tail


def _make_batch_flows(max_flow):
    def _batch_flows(node_ptr, arc_head, arc_rev, cap0, pairs, limit, out):
        n_nodes = len(node_ptr) - 1
        parent = np.empty(n_nodes, dtype=np.int64)
        queue = np.empty(n_nodes, dtype=np.int64)
        cap = np.empty_like(cap0)
        for p in range(pairs.shape[0]):
            for a in range(cap0.shape[0]):
                cap[a] = cap0[a]
            out[p] = max_flow(node_ptr, arc_head, arc_rev, cap, 2 * pairs[p, 0] + 1, 2 * pairs[p, 1], limit, parent, queue)

    return _batch_flows


def _distance_two_pairs(indptr, indices, out):
    n = len(indptr) - 1
    mark = np.full(n, -1, dtype=np.int64)
    seen = np.full(n, -1, dtype=np.int64)
    count = 0
    for u in range(n):
        mark[u] = u
        for k in range(indptr[u], indptr[u + 1]):
            mark[indices[k]] = u
        for k in range(indptr[u], indptr[u + 1]):
            b = indices[k]
            for m in range(indptr[b], indptr[b + 1]):
                v = indices[m]
                if v > u and mark[v] != u and seen[v] != u:
                    seen[v] = u
                    out[count, 0] = u
                    out[count, 1] = v
                    count += 1
    return count


def _bfs_dist(indptr, indices, source, dist, queue):
    n = len(indptr) - 1
    for i in range(n):
        dist[i] = -1
    dist[source] = 0
    head = 0
    tail = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        x = queue[head]
        head += 1
        for k in range(indptr[x], indptr[x + 1]):
            y = indices[k]
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue[tail] = y
                tail += 1
    return tail


if HAVE_NUMBA:
    _jit = numba.njit(cache=True, nogil=True)
    _max_flow_jit = _jit(_max_flow)
    _residual_reach_jit = _jit(_residual_reach)
    _batch_flows_jit = numba.njit(nogil=True)(_make_batch_flows(_max_flow_jit))
    _distance_two_pairs_jit = _jit(_distance_two_pairs)
    _bfs_dist_jit = _jit(_bfs_dist)


def use_numba() -> bool:
    return HAVE_NUMBA and numba_requested()



def _distance_two_pairs_numpy(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    n = len(indptr) - 1
    deg = np.diff(indptr)
    src = np.repeat(np.arange(n, dtype=np.int64), deg)
    mid = np.asarray(indices, dtype=np.int64)
    # every directed 2-walk src -> mid -> dst
    reps = deg[mid]
    u = np.repeat(src, reps)
    starts = np.repeat(indptr[mid], reps)
    offs = np.arange(len(u), dtype=np.int64) - np.repeat(np.cumsum(reps) - reps, reps)
    v = np.asarray(indices, dtype=np.int64)[starts + offs]
    keep = v > u
    u, v = u[keep], v[keep]
    codes = np.unique(u * n + v)
    adjacent = np.isin(codes, src * n + mid)
    codes = codes[~adjacent]
    return np.stack([codes // n, codes % n], axis=1)


class FlowNetwork:
    """Vertex-split digraph of an undirected graph given in CSR form.

    Vertex ``i`` becomes ``in = 2i`` and ``out = 2i + 1`` joined by a unit
    arc; each undirected edge ``{a, b}`` contributes uncapacitated arcs
    ``out(a) -> in(b)`` and ``out(b) -> in(a)``, so minimum cuts consist of
    split arcs only.  A flow from ``out(u)`` to ``in(v)`` is a family of
    internally vertex-disjoint u-v paths.
    """

    def __init__(self, indptr, indices, jit: bool | None = None):
        self.jit = use_numba() if jit is None else bool(jit and HAVE_NUMBA)
        indptr = np.asarray(indptr, dtype=np.int64)
        indices = np.asarray(indices, dtype=np.int64)
        n = len(indptr) - 1
        self.n = n
        ids = np.arange(n, dtype=np.int64)
        tails_e = np.repeat(ids, np.diff(indptr))
        f_tail = np.concatenate([2 * ids, 2 * tails_e + 1])
        f_head = np.concatenate([2 * ids + 1, 2 * indices])
        m = len(f_tail)
        tail = np.concatenate([f_tail, f_head])
        head = np.concatenate([f_head, f_tail])
        big = 2 * n + 2
        fwd = np.concatenate([np.ones(n, dtype=np.int64), np.full(m - n, big, dtype=np.int64)])
        cap = np.concatenate([fwd, np.zeros(m, dtype=np.int64)])
        partner = np.concatenate([np.arange(m, 2 * m), np.arange(m)])
        order = np.lexsort((head, tail))
        pos = np.empty(2 * m, dtype=np.int64)
        pos[order] = np.arange(2 * m, dtype=np.int64)
        self.arc_head = head[order]
        self.arc_rev = pos[partner[order]]
        self.cap0 = cap[order]
        self.node_ptr = np.zeros(2 * n + 1, dtype=np.int64)
        np.cumsum(np.bincount(tail, minlength=2 * n), out=self.node_ptr[1:])
        if not self.jit:
            self._lists = (self.node_ptr.tolist(), self.arc_head.tolist(), self.arc_rev.tolist())

    def max_flow(self, u: int, v: int, limit: int = -1):
        """Return ``(value, residual_capacities)`` for a flow out(u) -> in(v)."""
        source, sink = 2 * u + 1, 2 * v
        if self.jit:
            cap = self.cap0.copy()
            scratch = np.empty(2 * self.n, dtype=np.int64)
            queue = np.empty(2 * self.n, dtype=np.int64)
            value = _max_flow_jit(self.node_ptr, self.arc_head, self.arc_rev, cap, source, sink, limit, scratch, queue)
            return int(value), cap
        node_ptr, arc_head, arc_rev = self._lists
        cap = self.cap0.tolist()
        value = _max_flow(node_ptr, arc_head, arc_rev, cap, source, sink, limit, [0] * (2 * self.n), [0] * (2 * self.n))
        return value, np.asarray(cap, dtype=np.int64)

    def reachable(self, cap, source_vertex: int) -> np.ndarray:
        """Residual reachability mask over split nodes, from out(source_vertex)."""
        seen = np.zeros(2 * self.n, dtype=np.int64)
        queue = np.empty(2 * self.n, dtype=np.int64)
        if self.jit:
            _residual_reach_jit(self.node_ptr, self.arc_head, np.asarray(cap), 2 * source_vertex + 1, seen, queue)
            return seen.astype(bool)
        node_ptr, arc_head, _ = self._lists
        seen_l = [0] * (2 * self.n)
        _residual_reach(node_ptr, arc_head, list(cap), 2 * source_vertex + 1, seen_l, [0] * (2 * self.n))
        return np.asarray(seen_l, dtype=bool)

    def flow_successors(self, cap) -> dict[int, list[int]]:
        """Vertex-level arcs carrying one unit of flow: ``a -> [b, ...]``."""
        cap = np.asarray(cap)
        used = (self.cap0 > 0) & (cap[self.arc_rev] > 0)
        tails = np.repeat(np.arange(2 * self.n, dtype=np.int64), np.diff(self.node_ptr))
        succ: dict[int, list[int]] = {}
        for a in np.flatnonzero(used):
            t, h = int(tails[a]), int(self.arc_head[a])
            if t % 2 == 1 and h % 2 == 0:
                succ.setdefault(t // 2, []).append(h // 2)
        return succ

    def batch_flows(self, pairs: np.ndarray, limit: int = -1) -> np.ndarray:
        pairs = np.ascontiguousarray(pairs, dtype=np.int64).reshape(-1, 2)
        out = np.zeros(len(pairs), dtype=np.int64)
        if self.jit:
            _batch_flows_jit(self.node_ptr, self.arc_head, self.arc_rev, self.cap0, pairs, limit, out)
            return out
        node_ptr, arc_head, arc_rev = self._lists
        cap0 = self.cap0.tolist()
        parent = [0] * (2 * self.n)
        queue = [0] * (2 * self.n)
        for p, (u, v) in enumerate(pairs.tolist()):
            out[p] = _max_flow(node_ptr, arc_head, arc_rev, list(cap0), 2 * u + 1, 2 * v, limit, parent, queue)
        return out


def distance_two_pairs(indptr, indices, jit: bool | None = None) -> np.ndarray:
    """All vertex pairs ``u < v`` at graph distance exactly two, sorted."""
    jit = use_numba() if jit is None else bool(jit and HAVE_NUMBA)
    indptr = np.asarray(indptr, dtype=np.int64)
    indices = np.asarray(indices, dtype=np.int64)
    if not jit:
        return _distance_two_pairs_numpy(indptr, indices)
    deg = np.diff(indptr)
    bound = int(np.sum(deg[indices])) if len(indices) else 0
    out = np.empty((max(bound, 1), 2), dtype=np.int64)
    count = _distance_two_pairs_jit(indptr, indices, out)
    pairs = out[:count]
    order = np.lexsort((pairs[:, 1], pairs[:, 0]))
    return pairs[order]


def bfs_distances(indptr, indices, source: int, jit: bool | None = None) -> np.ndarray:
    jit = use_numba() if jit is None else bool(jit and HAVE_NUMBA)
    n = len(indptr) - 1
    if jit:
        dist = np.empty(n, dtype=np.int64)
        _bfs_dist_jit(np.asarray(indptr, dtype=np.int64), np.asarray(indices, dtype=np.int64), source, dist, np.empty(n, dtype=np.int64))
        return dist
    dist_l = [0] * n
    _bfs_dist(list(map(int, indptr)), list(map(int, indices)), source, dist_l, [0] * n)
    return np.asarray(dist_l, dtype=np.int64)
