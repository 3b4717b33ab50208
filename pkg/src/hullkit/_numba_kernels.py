"""numba versions of the graph kernels, compiled on first use and cached on disk."""

import numpy as np
from numba import njit


@njit(cache=True)
def _bfs_from(indptr, indices, n, src, allowed, out_row):
    queue = np.empty(n, dtype=np.int64)
    for i in range(n):
        out_row[i] = -1
    out_row[src] = 0
    head = 0
    tail = 1
    queue[0] = src
    while head < tail:
        u = queue[head]
        head += 1
        du = out_row[u]
        for p in range(indptr[u], indptr[u + 1]):
            w = indices[p]
            if allowed[w] and out_row[w] < 0:
                out_row[w] = du + 1
                queue[tail] = w
                tail += 1


@njit(cache=True)
def bfs_all_pairs(indptr, indices, n):
    out = np.empty((n, n), dtype=np.int32)
    allowed = np.ones(n, dtype=np.bool_)
    row = np.empty(n, dtype=np.int32)
    for s in range(n):
        _bfs_from(indptr, indices, n, s, allowed, row)
        out[s, :] = row
    return out


@njit(cache=True)
def induced_distances(indptr, indices, nodes, n):
    k = len(nodes)
    allowed = np.zeros(n, dtype=np.bool_)
    for i in range(k):
        allowed[nodes[i]] = True
    out = np.empty((k, k), dtype=np.int32)
    row = np.empty(n, dtype=np.int32)
    for i in range(k):
        _bfs_from(indptr, indices, n, nodes[i], allowed, row)
        for j in range(k):
            out[i, j] = row[nodes[j]]
    return out


@njit(cache=True)
def isometric_table(step, n):
    total = 1 << n
    ok = np.ones(total, dtype=np.bool_)
    for mask in range(total):
        good = True
        for u in range(n):
            if not (mask >> u) & 1:
                continue
            for v in range(n):
                if v == u or not (mask >> v) & 1:
                    continue
                if mask & step[u, v] == 0:
                    good = False
                    break
            if not good:
                break
        ok[mask] = good
    return ok
