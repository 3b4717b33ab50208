"""Brute-force reference solvers.

None of these share solving code with the optimised paths they check:
isometry is re-tested here with a plain BFS over the induced subgraph,
and every search walks subsets in (size, lex) order so witnesses are
stable across runs.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .errors import Infeasible, UniverseTooLarge
from .graph import Graph
from .instances import CnfFormula, Digraph, HittingSetInstance, QbfInstance
from .mingen import brute_force_min_gen
from .sets import VertexSet, as_mask, mask_of

__all__ = [
    "dominating_set_exact",
    "hitting_set_exact",
    "sat_solve",
    "qsat2_eval",
    "QbfAnswer",
    "min_generator_exhaustive",
    "iso_hull_enumerate",
    "is_isometric_bfs",
]

DOMINATING_LIMIT = 20
HITTING_LIMIT = 20
SAT_LIMIT = 20
QBF_LIMIT = 16
ISO_ENUM_LIMIT = 15

min_generator_exhaustive = brute_force_min_gen


def _subsets(n: int):
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            yield combo


def dominating_set_exact(d: Digraph) -> tuple[int, tuple[int, ...]]:
    """Smallest X such that every vertex is in X or has an arc from X."""
    if d.n > DOMINATING_LIMIT:
        raise UniverseTooLarge(f"dominating set oracle needs n <= {DOMINATING_LIMIT}")
    # reach[v]: v itself plus its out-neighbours
    reach = [1 << v for v in range(d.n)]
    for a, b in d.arcs:
        reach[a] |= 1 << b
    full = (1 << d.n) - 1
    for combo in _subsets(d.n):
        covered = 0
        for v in combo:
            covered |= reach[v]
        if covered == full:
            return len(combo), combo
    raise AssertionError("V dominates itself")  # pragma: no cover


def hitting_set_exact(h: HittingSetInstance, limit: int = HITTING_LIMIT) -> tuple[int, tuple[int, ...]]:
    if h.universe_size > limit:
        raise UniverseTooLarge(f"hitting set oracle needs |U| <= {limit}")
    if any(s == 0 for s in h.sets):
        raise Infeasible("the family contains an empty set")
    for combo in _subsets(h.universe_size):
        chosen = mask_of(combo)
        if all(s & chosen for s in h.sets):
            return len(combo), combo
    raise Infeasible("no hitting set exists")  # pragma: no cover


def sat_solve(phi: CnfFormula) -> tuple[bool, ...] | None:
    """First satisfying assignment in binary counting order, or None."""
    if phi.num_vars > SAT_LIMIT:
        raise UniverseTooLarge(f"SAT oracle needs at most {SAT_LIMIT} variables")
    for bits in itertools.product((False, True), repeat=phi.num_vars):
        if phi.satisfied_by(bits):
            return bits
    return None


@dataclass(frozen=True)
class QbfAnswer:
    """``value`` of exists-X forall-Y; ``x_witness`` when true, else one
    falsifying ``Y`` per ``X`` assignment in ``refutations``."""

    value: bool
    x_witness: tuple[bool, ...] | None = None
    refutations: dict | None = None

    def __bool__(self):
        return self.value


def qsat2_eval(q: QbfInstance) -> QbfAnswer:
    if q.num_vars > QBF_LIMIT:
        raise UniverseTooLarge(f"QBF oracle needs at most {QBF_LIMIT} variables")
    refutations = {}
    for xs in itertools.product((False, True), repeat=q.n_x):
        bad = next((ys for ys in itertools.product((False, True), repeat=q.n_y) if not q.value(xs, ys)), None)
        if bad is None:
            return QbfAnswer(True, xs)
        refutations[xs] = bad
    return QbfAnswer(False, None, refutations)


def _bfs(adj, src, allowed):
    dist = {src: 0}
    queue = deque([src])
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if b in allowed and b not in dist:
                dist[b] = dist[a] + 1
                queue.append(b)
    return dist


def is_isometric_bfs(g: Graph, nodes) -> bool:
    """Plain BFS comparison of induced and ambient distances."""
    nodes = set(nodes)
    everything = set(range(g.n))
    for u in nodes:
        inner = _bfs(g.adjacency, u, nodes)
        outer = _bfs(g.adjacency, u, everything)
        if any(inner.get(v) != outer.get(v) for v in nodes):
            return False
    return True


def iso_hull_enumerate(g: Graph, s) -> tuple[int, VertexSet]:
    """Minimum isometric superset of ``s`` by plain subset enumeration."""
    if g.n > ISO_ENUM_LIMIT:
        raise UniverseTooLarge(f"hull enumeration needs n <= {ISO_ENUM_LIMIT}")
    base = as_mask(s, g.n)
    rest = [v for v in range(g.n) if not base >> v & 1]
    best = None
    for k in range(len(rest) + 1):
        for combo in itertools.combinations(rest, k):
            cand = base | mask_of(combo)
            nodes = [v for v in range(g.n) if cand >> v & 1]
            if is_isometric_bfs(g, nodes):
                key = tuple(nodes)
                if best is None or key < best[1]:
                    best = (cand, key)
        if best is not None:
            return best[0].bit_count(), VertexSet(g.n, best[0])
    raise AssertionError("V is isometric")  # pragma: no cover

