"""Hull numbers, isometric hulls and isometric hull sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .closure import conv_oracle, enumerate_images
from .errors import BudgetExhausted, NotAPartialCube, UniverseTooLarge
from .graph import Graph, count_shortest_paths, hypercube_embedding, shortest_paths
from .mingen import min_gen
from .sets import VertexSet, as_mask, canonical_key, full_mask, mask_of, members, popcount

DEFAULT_MAX_CLOSED_SETS = 10**6
DEFAULT_NODE_BUDGET = 100_000
DEFAULT_PATH_CAP = 10_000
ENUMERATION_LIMIT = 15


@dataclass(frozen=True)
class HullResult:
    hull_vertices: VertexSet
    size: int
    optimal: bool
    method: str
    nodes_explored: int = 0

    def as_dict(self) -> dict:
        return {
            "size": self.size,
            "vertices": list(self.hull_vertices.members),
            "optimal": self.optimal,
            "method": self.method,
            "nodes_explored": self.nodes_explored,
        }


@dataclass(frozen=True)
class HullSetVerdict:
    """``status`` is ``hull_set``, ``not_hull_set`` or ``unknown``."""

    status: str
    witness: VertexSet | None = None

    def __bool__(self):
        return self.status == "hull_set"


# -- convex hull number -------------------------------------------------------

def hull_number(g: Graph, max_closed_sets: int = DEFAULT_MAX_CLOSED_SETS) -> tuple[int, VertexSet]:
    """Minimum size of a set whose convex hull is ``V``, with a witness."""
    g.require_connected()
    oracle = conv_oracle(g)
    images = enumerate_images(oracle, "lectic", max_sets=max_closed_sets)
    table = min_gen(oracle, images)
    best = table.labels[full_mask(g.n)]
    return popcount(best), VertexSet(g.n, best)


def hull_number_via_coordinate_reversal(g: Graph) -> tuple[int, VertexSet]:
    """Hull number of a partial cube, computed as a coordinate reversal."""
    from .instances import CubeVectorSet
    from .reductions import coordinate_reversal_solve

    emb = hypercube_embedding(g)
    if emb is None:
        raise NotAPartialCube("graph is not a partial cube")
    if emb.dimension == 0:
        # K1: no coordinate to reverse, but the hull of the empty set is empty.
        return 1, VertexSet(g.n, 1)
    size, chosen = coordinate_reversal_solve(CubeVectorSet(emb.dimension, emb.coordinates))
    return size, VertexSet(g.n, as_mask(chosen))


# -- violated pairs and repairs ------------------------------------------------

def _violations(g: Graph, c: int) -> list[tuple[int, int, int]]:
    """Pairs ``(gap, u, v)`` of members whose induced distance is too long.

    Sorted worst first, ties by ``(u, v)``; a disconnected pair gets gap
    ``n``, above every finite gap.
    """
    nodes = members(c)
    if len(nodes) < 2:
        return []
    idx = np.asarray(nodes, dtype=np.int64)
    ind = g.induced_distances(idx).astype(np.int64)
    amb = g.dist[np.ix_(idx, idx)].astype(np.int64)
    gap = np.where(ind < 0, g.n, ind - amb)
    iu, iv = np.nonzero(np.triu(gap > 0, 1))
    out = [(int(gap[a, b]), nodes[a], nodes[b]) for a, b in zip(iu, iv)]
    out.sort(key=lambda t: (-t[0], t[1], t[2]))
    return out


def _cheapest_path(g: Graph, c: int, u: int, v: int) -> tuple[int, int]:
    """Shortest u-v path adding fewest vertices outside ``c``.

    Ties go to the lexicographically smallest vertex sequence. Returns
    ``(path_mask, added_count)``.
    """
    du, dv = g.dist[u], g.dist[:, v]
    d = int(du[v])
    inside = np.flatnonzero(du.astype(np.int64) + dv == d)
    by_level = sorted(inside.tolist(), key=lambda w: dv[w])
    cost = {}
    for w in by_level:
        own = 0 if c >> w & 1 else 1
        if w == v:
            cost[w] = own
            continue
        cost[w] = own + min(cost[x] for x in g.adjacency[w] if x in cost and dv[x] == dv[w] - 1)
    path = 1 << u
    w = u
    while w != v:
        rest = cost[w] - (0 if c >> w & 1 else 1)
        w = min(x for x in g.adjacency[w] if x in cost and dv[x] == dv[w] - 1 and cost[x] == rest)
        path |= 1 << w
    return path, cost[u]


def iso_hull_greedy(g: Graph, s) -> HullResult:
    """Repair the worst violated pair with its cheapest shortest path, repeatedly."""
    g.require_connected()
    c = as_mask(s, g.n)
    start = c
    rounds = 0
    while True:
        viol = _violations(g, c)
        if not viol:
            break
        _, u, v = viol[0]
        path, _ = _cheapest_path(g, c, u, v)
        c |= path
        rounds += 1
    optimal = c == start
    return HullResult(VertexSet(g.n, c), popcount(c), optimal, "greedy", rounds)


class _Stop(Exception):
    pass


def _branch_sets(g: Graph, c: int, u: int, v: int, path_cap: int) -> list[int]:
    if count_shortest_paths(g, u, v) > path_cap:
        rest = g.interval_mask(u, v) & ~c
        return [1 << w for w in members(rest)]
    cands = {mask_of(p) & ~c for p in shortest_paths(g, u, v)}
    ordered = sorted(cands, key=canonical_key)
    kept: list[int] = []
    for cand in ordered:
        if not any(k & ~cand == 0 for k in kept):
            kept.append(cand)
    return kept


def iso_hull_exact(
    g: Graph,
    s,
    budget: int = DEFAULT_NODE_BUDGET,
    path_cap: int = DEFAULT_PATH_CAP,
    upper_bound: int | None = None,
) -> HullResult:
    """Minimum isometric superset of ``s`` by branch and bound.

    Each node picks the worst violated pair and branches over the shortest
    paths of ``g`` joining it (an isometric superset must contain one).
    ``upper_bound`` (a vertex mask) seeds the incumbent; otherwise the
    greedy result does. Raises :class:`BudgetExhausted` after ``budget``
    nodes, carrying the best hull seen.
    """
    g.require_connected()
    start = as_mask(s, g.n)
    if upper_bound is None:
        best = as_mask(iso_hull_greedy(g, start).hull_vertices)
    else:
        best = upper_bound
    best_size = popcount(best)
    seen: set[int] = set()
    nodes = 0

    def search(c: int):
        nonlocal best, best_size, nodes
        if c in seen:
            return
        seen.add(c)
        nodes += 1
        if nodes > budget:
            raise _Stop
        viol = _violations(g, c)
        size = popcount(c)
        if not viol:
            if size < best_size or (size == best_size and canonical_key(c) < canonical_key(best)):
                best, best_size = c, size
            return
        bound = max(_cheapest_path(g, c, u, v)[1] for _, u, v in viol[:64])
        if size + bound > best_size:
            return
        _, u, v = viol[0]
        for cand in _branch_sets(g, c, u, v, path_cap):
            if size + popcount(cand) <= best_size:
                search(c | cand)

    try:
        search(start)
    except _Stop:
        res = HullResult(VertexSet(g.n, best), best_size, False, "exact", nodes - 1)
        raise BudgetExhausted(f"node budget {budget} exhausted", best=res, nodes_explored=nodes - 1)
    return HullResult(VertexSet(g.n, best), best_size, True, "exact", nodes)


# -- hull sets --------------------------------------------------------------------

@lru_cache(maxsize=16)
def _isometric_table(g: Graph) -> np.ndarray:
    if g.n > ENUMERATION_LIMIT:
        raise UniverseTooLarge(f"subset enumeration needs n <= {ENUMERATION_LIMIT}")
    return _kernels.isometric_table(g.step_masks, g.n)


def isometric_subsets(g: Graph) -> np.ndarray:
    """Masks of every isometric vertex subset (n <= 15), ascending."""
    return np.flatnonzero(_isometric_table(g)).astype(np.int64)


def is_hull_set(g: Graph, s, budget: int = DEFAULT_NODE_BUDGET) -> HullSetVerdict:
    """Is ``V`` the only isometric set containing ``s``?"""
    g.require_connected()
    m = as_mask(s, g.n)
    full = full_mask(g.n)
    if m == full:
        return HullSetVerdict("hull_set")
    if g.n <= ENUMERATION_LIMIT:
        iso = isometric_subsets(g)
        hits = iso[((iso & m) == m) & (iso != full)]
        if len(hits) == 0:
            return HullSetVerdict("hull_set")
        w = min((int(x) for x in hits), key=canonical_key)
        return HullSetVerdict("not_hull_set", VertexSet(g.n, w))
    try:
        res = iso_hull_exact(g, m, budget=budget, upper_bound=full)
    except BudgetExhausted as exc:
        if exc.best is not None and exc.best.size < g.n:
            return HullSetVerdict("not_hull_set", exc.best.hull_vertices)
        return HullSetVerdict("unknown")
    if res.size < g.n:
        return HullSetVerdict("not_hull_set", res.hull_vertices)
    return HullSetVerdict("hull_set")


def iso_hull_number(g: Graph) -> tuple[int, VertexSet]:
    """Smallest isometric hull set, by enumeration in (size, lex) order."""
    g.require_connected()
    n = g.n
    if n > ENUMERATION_LIMIT:
        raise UniverseTooLarge(f"isometric hull number needs n <= {ENUMERATION_LIMIT}")
    full = full_mask(n)
    proper = [int(x) for x in isometric_subsets(g) if x != full]
    maximal = [a for a in proper if not any(b != a and a & ~b == 0 for b in proper)]
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            cand = mask_of(combo)
            if all(cand & ~mx for mx in maximal):
                return k, VertexSet(n, cand)
    raise AssertionError("V itself is always a hull set")  # pragma: no cover
