"""Reductions between generating sets, dominating sets, hitting sets and
coordinate reversal."""

from __future__ import annotations

from dataclasses import dataclass

from ..closure import PseudoClosureOracle
from ..errors import Infeasible, ParameterError
from ..instances import CubeVectorSet, Digraph, HittingSetInstance
from ..sets import full_mask, mask_of, members

__all__ = [
    "normalize_hitting_family",
    "DominationReduction",
    "dominating_to_closure",
    "CoordinateReduction",
    "hitting_to_coordinate",
    "coordinate_to_hitting",
    "coordinate_reversal_solve",
    "build_Mk_instance",
    "drop_constant_coordinates",
]


@dataclass(frozen=True)
class NormalizedFamily:
    """A hitting-set family after pruning.

    ``elements`` are the surviving original elements (new index = position),
    ``sets`` the pruned family over new indices and ``rep`` sends every
    original element to a surviving one that hits at least the same sets.
    """

    elements: tuple[int, ...]
    sets: tuple[int, ...]
    rep: dict[int, int]


def _dominated(u: int, w: int, sets) -> bool:
    return all(s >> w & 1 for s in sets if s >> u & 1)


def normalize_hitting_family(universe_size: int, sets, *, keep_minimal: bool = True) -> NormalizedFamily:
    """Drop non-minimal sets and dominated elements until nothing changes.

    Element ``u`` is dominated by ``w`` when every set holding ``u`` holds
    ``w``; swapping ``u`` for ``w`` never breaks a hitting set, so the
    optimum is unchanged. On exit every two surviving elements are
    separated by some set.
    """
    fam = set(int(s) for s in sets)
    alive = list(range(universe_size))
    rep = {v: v for v in range(universe_size)}
    changed = True
    while changed:
        changed = False
        if keep_minimal:
            minimal = {s for s in fam if not any(t != s and t & ~s == 0 for t in fam)}
            if minimal != fam:
                fam, changed = minimal, True
        for u in list(alive):
            for w in alive:
                if w != u and _dominated(u, w, fam):
                    alive.remove(u)
                    rep[u] = w
                    fam = {s & ~(1 << u) for s in fam}
                    changed = True
                    break
    for v in range(universe_size):
        while rep[v] != rep[rep[v]]:
            rep[v] = rep[rep[v]]
    index = {v: i for i, v in enumerate(alive)}
    relabel = lambda s: mask_of(index[v] for v in members(s))  # noqa: E731
    new_sets = tuple(sorted(relabel(s) for s in fam))
    return NormalizedFamily(tuple(alive), new_sets, {v: index[rep[v]] for v in range(universe_size)})


# -- generating sets vs dominating sets ------------------------------------------

@dataclass(frozen=True)
class DominationReduction:
    digraph: Digraph
    oracle: PseudoClosureOracle
    normalized: NormalizedFamily

    @property
    def elements(self) -> tuple[int, ...]:
        return self.normalized.elements

    def forward(self, dominating) -> int:
        """Dominating set (original vertices) to a generator of equal or smaller size."""
        return mask_of(self.normalized.rep[v] for v in dominating)

    def backward(self, generator: int) -> tuple[int, ...]:
        """Generator (closure universe indices) to a dominating set of the same size."""
        return tuple(self.normalized.elements[i] for i in members(generator))


def dominating_to_closure(d: Digraph) -> DominationReduction:
    """Atomistic closure whose minimum generating set size equals the
    minimum dominating set size of ``d``.

    A dominating set is a hitting set of the closed in-neighbourhoods. After
    normalising that family, the closed sets are all intersections of the
    complements of its members.
    """
    norm = normalize_hitting_family(d.n, [d.closed_in_neighborhood(v) for v in range(d.n)])
    k = len(norm.elements)
    full = full_mask(k)
    complements = [full & ~s for s in norm.sets]

    def evaluate(x: int) -> int:
        out = full
        for s, c in zip(norm.sets, complements):
            if not s & x:
                out &= c
        return out

    oracle = PseudoClosureOracle(k, evaluate, is_closure=True, name="domination")
    return DominationReduction(d, oracle, norm)


# -- hitting set vs coordinate reversal ----------------------------------------------

@dataclass(frozen=True)
class CoordinateReduction:
    """Hitting set instance turned into vertices of a hypercube.

    Vector ``i < len(elements)`` stands for original element
    ``elements[i]``; the last vector is the extra all-zero point ``x``.
    """

    source: HittingSetInstance
    instance: CubeVectorSet
    elements: tuple[int, ...]
    rep: dict[int, int]

    @property
    def x_index(self) -> int:
        return len(self.elements)

    def forward(self, hitting) -> tuple[int, ...]:
        return tuple(sorted({self.rep[v] for v in hitting} | {self.x_index}))

    def backward(self, chosen) -> tuple[int, ...]:
        return tuple(sorted(self.elements[i] for i in chosen if i != self.x_index))


def hitting_to_coordinate(h: HittingSetInstance) -> CoordinateReduction:
    """Coordinate reversal instance whose optimum is one more than the
    minimum hitting set of ``h.sets`` plus the whole ground set.

    The ground set is appended to the family, dominated elements are
    removed, and every set contributes one coordinate: ``1`` on its
    members, ``0`` on the rest and on the new point ``x``.
    """
    if h.universe_size == 0:
        raise Infeasible("empty ground set cannot hit the appended ground set")
    if any(s == 0 for s in h.sets):
        raise Infeasible("the family contains an empty set")
    fam = list(h.sets) + [full_mask(h.universe_size)]
    norm = normalize_hitting_family(h.universe_size, fam, keep_minimal=False)
    coords = sorted(set(norm.sets))
    k = len(norm.elements)
    vectors = [tuple(s >> i & 1 for s in coords) for i in range(k)]
    vectors.append(tuple(0 for _ in coords))
    target = None if h.k is None else h.k + 1
    inst = CubeVectorSet(len(coords), tuple(vectors), target)
    return CoordinateReduction(h, inst, norm.elements, norm.rep)


def coordinate_to_hitting(c: CubeVectorSet) -> HittingSetInstance:
    """One set per coordinate value: hitting sets are exactly reversals."""
    sets = []
    for e in range(c.dimension):
        plus = mask_of(i for i, v in enumerate(c.vectors) if v[e] == 1)
        minus = mask_of(i for i, v in enumerate(c.vectors) if v[e] == 0)
        if plus == 0 or minus == 0:
            raise Infeasible(f"coordinate {e} is constant on every vector")
        sets.extend((plus, minus))
    return HittingSetInstance(len(c.vectors), tuple(sets), c.k)


def coordinate_reversal_solve(c: CubeVectorSet) -> tuple[int, tuple[int, ...]]:
    from ..oracles import hitting_set_exact

    return hitting_set_exact(coordinate_to_hitting(c), limit=25)


def build_Mk_instance(k: int) -> CubeVectorSet:
    """Rows of the k x 2^k matrix whose columns are all binary k-vectors."""
    if not 1 <= k <= 5:
        raise ParameterError("k must lie in 1..5")
    rows = tuple(tuple((j >> (k - 1 - i)) & 1 for j in range(1 << k)) for i in range(k))
    return CubeVectorSet(1 << k, rows)


def drop_constant_coordinates(c: CubeVectorSet) -> CubeVectorSet:
    """Restrict to coordinates that take both values on the vectors.

    Vectors that become equal are merged (first occurrence kept).
    """
    keep = [e for e in range(c.dimension) if len({v[e] for v in c.vectors}) == 2]
    vecs = tuple(dict.fromkeys(tuple(v[e] for e in keep) for v in c.vectors))
    return CubeVectorSet(len(keep), vecs, c.k)
