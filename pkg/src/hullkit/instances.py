"""Problem instance types shared by the reductions and the brute-force oracles."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .sets import mask_of, members


@dataclass(frozen=True)
class Digraph:
    """Directed graph on ``0..n-1`` without self-loops."""

    n: int
    arcs: frozenset = frozenset()

    def __post_init__(self):
        arcs = frozenset((int(a), int(b)) for a, b in self.arcs)
        for a, b in arcs:
            if a == b:
                raise ValueError(f"self-loop at {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError(f"arc ({a}, {b}) outside 0..{self.n - 1}")
        object.__setattr__(self, "arcs", arcs)

    def closed_in_neighborhood(self, v: int) -> int:
        """Mask of ``v`` and every vertex with an arc into ``v``."""
        return (1 << v) | mask_of(a for a, b in self.arcs if b == v)

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)


@dataclass(frozen=True)
class HittingSetInstance:
    """Ground set ``0..universe_size-1``, a family of subsets (masks) and a bound."""

    universe_size: int
    sets: tuple[int, ...]
    k: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(int(s) for s in self.sets))
        for s in self.sets:
            if s < 0 or s >> self.universe_size:
                raise ValueError(f"set {members(s)} leaves the ground set")

    @classmethod
    def from_lists(cls, universe_size: int, sets: Iterable[Iterable[int]], k=None):
        return cls(universe_size, tuple(mask_of(s) for s in sets), k)

    @property
    def m(self) -> int:
        return len(self.sets)

    def is_hitting_set(self, chosen: int) -> bool:
        return all(s & chosen for s in self.sets)


@dataclass(frozen=True)
class CubeVectorSet:
    """Distinct 0/1 vectors of length ``dimension`` (a vertex subset of Q_d)."""

    dimension: int
    vectors: tuple[tuple[int, ...], ...]
    k: int | None = None

    def __post_init__(self):
        vecs = tuple(tuple(int(x) for x in v) for v in self.vectors)
        for v in vecs:
            if len(v) != self.dimension or any(x not in (0, 1) for x in v):
                raise ValueError(f"{v} is not a 0/1 vector of length {self.dimension}")
        if len(set(vecs)) != len(vecs):
            raise ValueError("vectors must be distinct")
        object.__setattr__(self, "vectors", vecs)

    def reverses_all(self, chosen: Iterable[int]) -> bool:
        chosen = list(chosen)
        return all(len({self.vectors[i][e] for i in chosen}) == 2 for e in range(self.dimension))


@dataclass(frozen=True)
class CnfFormula:
    """CNF over variables ``1..num_vars``; literals are signed ints."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cl = tuple(tuple(int(x) for x in c) for c in self.clauses)
        for c in cl:
            if any(x == 0 or abs(x) > self.num_vars for x in c):
                raise ValueError(f"clause {c} uses an unknown variable")
            if len({abs(x) for x in c}) != len(c):
                raise ValueError(f"clause {c} mentions a variable twice")
        object.__setattr__(self, "clauses", cl)

    def satisfied_by(self, assignment) -> bool:
        """``assignment[i-1]`` is the value of variable ``i``."""
        return all(any((x > 0) == bool(assignment[abs(x) - 1]) for x in c) for c in self.clauses)


@dataclass(frozen=True)
class QbfInstance:
    """``exists X forall Y`` over a 3-DNF matrix.

    Variables ``1..n_x`` are existential, ``n_x+1..n_x+n_y`` universal.
    Each clause is a conjunction of three literals; the same literal may be
    repeated, but a clause never holds a variable with both signs.
    """

    n_x: int
    n_y: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cl = tuple(tuple(int(x) for x in c) for c in self.clauses)
        nv = self.n_x + self.n_y
        for c in cl:
            if any(x == 0 or abs(x) > nv for x in c):
                raise ValueError(f"clause {c} uses an unknown variable")
            if any(-x in c for x in c):
                raise ValueError(f"clause {c} holds a variable with both signs")
        object.__setattr__(self, "clauses", cl)

    @property
    def num_vars(self) -> int:
        return self.n_x + self.n_y

    def occurrence_problems(self) -> list[str]:
        """Variables lacking a positive or a negative occurrence."""
        issues = []
        for v in range(1, self.num_vars + 1):
            if not any(v in c for c in self.clauses):
                issues.append(f"variable {v} never occurs positively")
            if not any(-v in c for c in self.clauses):
                issues.append(f"variable {v} never occurs negatively")
        return issues

    def value(self, xs, ys) -> bool:
        vals = list(xs) + list(ys)
        return any(all((x > 0) == bool(vals[abs(x) - 1]) for x in c) for c in self.clauses)


@dataclass
class GadgetLayout:
    """Named vertices of a constructed graph.

    ``roles`` maps a role name (``"r"``, ``"d_1"``, ``"corner(2,0)"``...) to
    one vertex; ``groups`` holds named vertex lists (paths, mandatory sets);
    ``params`` the construction parameters.
    """

    roles: dict[str, int] = field(default_factory=dict)
    groups: dict[str, list[int]] = field(default_factory=dict)
    params: dict[str, object] = field(default_factory=dict)

    def __getitem__(self, role: str) -> int:
        return self.roles[role]

    def to_json(self) -> dict:
        return {
            "roles": dict(sorted(self.roles.items())),
            "groups": {k: list(v) for k, v in sorted(self.groups.items())},
            "params": dict(sorted(self.params.items())),
        }
