"""Simple undirected graphs, BFS metrics, geodesic convexity and isometry."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import _kernels
from ._kernels import UNREACHABLE
from .errors import DisconnectedGraph, UnreachablePair
from .sets import VertexSet, as_mask, iter_members, mask_of, members

__all__ = [
    "UNREACHABLE",
    "Graph",
    "CubeEmbedding",
    "all_pairs_distances",
    "interval",
    "conv",
    "is_convex",
    "is_isometric",
    "count_shortest_paths",
    "shortest_paths",
    "hypercube_embedding",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "hypercube_graph",
]


def _rows_to_ints(rows: np.ndarray) -> list[int]:
    """Pack each boolean row into an int bitmask (bit i <-> column i)."""
    if rows.shape[1] == 0:
        return [0] * rows.shape[0]
    packed = np.packbits(rows.astype(np.bool_), axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Instances are treated as immutable; derived data (distances, CSR arrays,
    interval masks) is computed lazily and cached.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adjacency: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)

    # -- basic structure -------------------------------------------------
    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        for v in range(self.n):
            indptr[v + 1] = indptr[v] + len(self.adjacency[v])
        indices = np.fromiter(
            (w for v in range(self.n) for w in sorted(self.adjacency[v])),
            dtype=np.int64,
            count=int(indptr[-1]),
        )
        return indptr, indices

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(a) for a in self.adjacency)

    @cached_property
    def dist(self) -> np.ndarray:
        d = _kernels.bfs_all_pairs(*self.csr, self.n)
        d.setflags(write=False)
        return d

    @cached_property
    def is_connected(self) -> bool:
        return self.n <= 1 or bool((self.dist[0] != UNREACHABLE).all())

    def require_connected(self) -> None:
        if not self.is_connected:
            raise DisconnectedGraph("operation requires a connected graph")

    @cached_property
    def is_bipartite(self) -> bool:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.adjacency[u]:
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        stack.append(w)
                    elif color[w] == color[u]:
                        return False
        return True

    def diameter(self) -> int:
        self.require_connected()
        return int(self.dist.max()) if self.n else 0

    # -- interval masks (used by conv) ------------------------------------
    @cached_property
    def _interval_rows(self) -> dict[int, list[int]]:
        return {}

    def interval_mask(self, u: int, v: int) -> int:
        rows = self._interval_rows
        row = rows.get(u)
        if row is None:
            d = self.dist.astype(np.int64)
            through = d[u][None, :] + d  # through[v, w] = d(u,w) + d(w,v)
            on = (through == d[u][:, None]) & (d >= 0) & (d[u][None, :] >= 0)
            row = _rows_to_ints(on)
            rows[u] = row
        return row[v]

    @cached_property
    def step_masks(self) -> np.ndarray:
        """``step[u, v]``: neighbours of ``u`` one step closer to ``v`` (n <= 62)."""
        if self.n > 62:
            raise ValueError("step masks need n <= 62")
        d = self.dist
        step = np.zeros((self.n, self.n), dtype=np.int64)
        for u in range(self.n):
            for w in self.adjacency[u]:
                closer = np.flatnonzero(d[w] == d[u] - 1)
                step[u, closer] |= np.int64(1) << np.int64(w)
        return step

    def induced_distances(self, nodes) -> np.ndarray:
        indptr, indices = self.csr
        return _kernels.induced_distances(indptr, indices, np.asarray(nodes, dtype=np.int64), self.n)

    def subgraph(self, nodes) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled ``0..k-1``; also returns the old ids."""
        old = sorted(members(as_mask(nodes)))
        new = {v: i for i, v in enumerate(old)}
        edges = [(new[u], new[v]) for u, v in self.edges if u in new and v in new]
        return Graph(len(old), edges), old

    def to_networkx(self):
        import networkx as nx

        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges)
        return h

    @classmethod
    def from_networkx(cls, h) -> "Graph":
        index = {v: i for i, v in enumerate(sorted(h.nodes()))}
        return cls(len(index), ((index[u], index[v]) for u, v in h.edges()))


# -- constructors -----------------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def hypercube_graph(d: int) -> Graph:
    n = 1 << d
    return Graph(n, ((v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)))


# -- metric operations ------------------------------------------------------

def all_pairs_distances(g: Graph) -> np.ndarray:
    """n x n int32 matrix of BFS distances; ``UNREACHABLE`` (-1) across components."""
    return g.dist


def _check_pair(g: Graph, u: int, v: int) -> int:
    d = int(g.dist[u, v])
    if d == UNREACHABLE:
        raise UnreachablePair(f"{u} and {v} are in different components")
    return d


def interval(g: Graph, u: int, v: int) -> VertexSet:
    """Vertices on at least one shortest u-v path."""
    _check_pair(g, u, v)
    return VertexSet(g.n, g.interval_mask(u, v))


def conv_mask(g: Graph, s: int, base: int = 0) -> int:
    """Convex hull of ``base | s`` where ``base`` is already known convex."""
    hull = base | s
    done = base
    pending = list(iter_members(s & ~base))
    while pending:
        a = pending.pop()
        add = 0
        for b in iter_members(done):
            add |= g.interval_mask(a, b)
        done |= 1 << a
        new = add & ~hull
        if new:
            hull |= new
            pending.extend(iter_members(new))
    return hull


def conv(g: Graph, s) -> VertexSet:
    """Smallest convex set containing ``s``."""
    g.require_connected()
    return VertexSet(g.n, conv_mask(g, as_mask(s, g.n)))


def is_convex(g: Graph, s) -> bool:
    g.require_connected()
    m = as_mask(s, g.n)
    ms = members(m)
    for i, a in enumerate(ms):
        for b in ms[i + 1:]:
            if g.interval_mask(a, b) & ~m:
                return False
    return True


def is_isometric_mask(g: Graph, m: int) -> bool:
    nodes = members(m)
    if len(nodes) <= 1:
        return True
    idx = np.asarray(nodes, dtype=np.int64)
    return bool(np.array_equal(g.induced_distances(idx), g.dist[np.ix_(idx, idx)]))


def is_isometric(g: Graph, s) -> bool:
    """Does the subgraph induced by ``s`` preserve all distances of ``g``?"""
    g.require_connected()
    return is_isometric_mask(g, as_mask(s, g.n))


def count_shortest_paths(g: Graph, u: int, v: int) -> int:
    """Number of distinct shortest u-v paths (exact, arbitrary precision)."""
    d = _check_pair(g, u, v)
    du = g.dist[u]
    layer = [u]
    counts = {u: 1}
    for level in range(1, d + 1):
        nxt = {}
        for a in layer:
            ca = counts[a]
            for w in g.adjacency[a]:
                if du[w] == level and g.dist[w, v] == d - level:
                    nxt[w] = nxt.get(w, 0) + ca
        counts = nxt
        layer = list(nxt)
    return counts.get(v, 0)


def shortest_paths(g: Graph, u: int, v: int) -> Iterator[tuple[int, ...]]:
    """All shortest u-v paths, lexicographic by vertex sequence."""
    _check_pair(g, u, v)
    dv = g.dist[:, v]
    path = [u]

    def walk(a):
        if a == v:
            yield tuple(path)
            return
        for w in sorted(g.adjacency[a]):
            if dv[w] == dv[a] - 1:
                path.append(w)
                yield from walk(w)
                path.pop()

    yield from walk(u)


# -- partial cubes ------------------------------------------------------------

@dataclass(frozen=True)
class CubeEmbedding:
    """Isometric embedding of a graph into the hypercube of ``dimension``."""

    dimension: int
    coordinates: tuple[tuple[int, ...], ...]

    def hamming(self, u: int, v: int) -> int:
        return sum(a != b for a, b in zip(self.coordinates[u], self.coordinates[v]))


def hypercube_embedding(g: Graph) -> CubeEmbedding | None:
    """Djokovic-Winkler embedding; ``None`` when ``g`` is not a partial cube."""
    g.require_connected()
    if g.n == 1:
        return CubeEmbedding(0, ((),))
    if not g.is_bipartite:
        return None
    d = g.dist.astype(np.int64)
    e = np.asarray(g.edges, dtype=np.int64)
    a, b = e[:, 0], e[:, 1]
    related = (d[np.ix_(a, a)] + d[np.ix_(b, b)]) != (d[np.ix_(a, b)] + d[np.ix_(b, a)])
    ncls, labels = connected_components(csr_matrix(related), directed=False)
    # First edge (in edge order) of each class fixes the orientation.
    reps = {}
    for i, c in enumerate(labels):
        reps.setdefault(int(c), i)
    order = sorted(reps.values())
    coords = np.zeros((g.n, len(order)), dtype=np.int64)
    for k, i in enumerate(order):
        coords[:, k] = d[:, b[i]] < d[:, a[i]]
    hamming = coords @ (1 - coords).T + (1 - coords) @ coords.T
    if not np.array_equal(hamming, d):
        return None
    return CubeEmbedding(len(order), tuple(tuple(int(x) for x in row) for row in coords))
