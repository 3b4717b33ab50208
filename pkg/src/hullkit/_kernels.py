"""Hot numeric kernels with a numba path and a plain numpy/scipy path.

The backend is picked once at import time. Set ``HULLKIT_BACKEND=numpy`` to
force the fallback; ``numba`` (the default) silently degrades to numpy when
numba is not importable. Both implementations stay reachable as
``numba_impl`` / ``numpy_impl`` so the benchmark and the tests can run them
side by side.

Conventions: adjacency is CSR (``indptr``, ``indices``, int64); distances are
int32 with ``-1`` for unreachable pairs.
"""

from __future__ import annotations

import os
import types

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

UNREACHABLE = -1

# --------------------------------------------------------------------------
# numpy / scipy


def _np_bfs_all_pairs(indptr, indices, n):
    if n == 0:
        return np.zeros((0, 0), dtype=np.int32)
    adj = csr_matrix((np.ones(len(indices), dtype=np.int8), indices, indptr), shape=(n, n))
    d = shortest_path(adj, method="D", directed=False, unweighted=True)
    out = np.full((n, n), UNREACHABLE, dtype=np.int32)
    finite = np.isfinite(d)
    out[finite] = d[finite].astype(np.int32)
    return out


def _np_induced_distances(indptr, indices, nodes, n):
    k = len(nodes)
    if k == 0:
        return np.zeros((0, 0), dtype=np.int32)
    adj = csr_matrix((np.ones(len(indices), dtype=np.int8), indices, indptr), shape=(n, n))
    sub = adj[nodes][:, nodes]
    d = shortest_path(sub, method="D", directed=False, unweighted=True)
    out = np.full((k, k), UNREACHABLE, dtype=np.int32)
    finite = np.isfinite(d)
    out[finite] = d[finite].astype(np.int32)
    return out


def _np_isometric_table(step, n):
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=np.bool_)
    has = [(masks >> u) & 1 == 1 for u in range(n)]
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            both = has[u] & has[v]
            ok &= ~both | ((masks & step[u, v]) != 0)
    return ok


numpy_impl = types.SimpleNamespace(
    name="numpy",
    bfs_all_pairs=_np_bfs_all_pairs,
    induced_distances=_np_induced_distances,
    isometric_table=_np_isometric_table,
)

# --------------------------------------------------------------------------
# numba


def _build_numba():
    from . import _numba_kernels as k

    return types.SimpleNamespace(
        name="numba",
        bfs_all_pairs=k.bfs_all_pairs,
        induced_distances=k.induced_distances,
        isometric_table=k.isometric_table,
    )


try:
    numba_impl = _build_numba()
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba_impl = None

_requested = os.environ.get("HULLKIT_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise RuntimeError(f"HULLKIT_BACKEND must be 'numba' or 'numpy', got {_requested!r}")
active = numba_impl if (_requested == "numba" and numba_impl is not None) else numpy_impl
BACKEND = active.name


def bfs_all_pairs(indptr, indices, n):
    return active.bfs_all_pairs(indptr, indices, n)


def induced_distances(indptr, indices, nodes, n):
    return active.induced_distances(indptr, indices, np.asarray(nodes, dtype=np.int64), n)


def isometric_table(step, n):
    """Boolean table over all ``2**n`` subsets: is the subset isometric?

    ``step[u, v]`` is the mask of neighbours of ``u`` one step closer to
    ``v``. A set is isometric iff every ordered pair of members has such a
    neighbour inside the set.
    """
    if n > 62:
        raise ValueError("isometric_table is limited to 62 vertices")
    return active.isometric_table(step, n)
