"""Inclusion lattices of closed-set families."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .closure import ClosedFamily, conv_oracle, enumerate_images
from .graph import Graph
from .sets import VertexSet, members, popcount


@dataclass(frozen=True)
class Lattice:
    """Hasse diagram of a closed family ordered by inclusion.

    ``elements`` are masks in canonical order; ``covers`` holds index pairs
    ``(lower, upper)``.
    """

    universe_size: int
    elements: tuple[int, ...]
    covers: tuple[tuple[int, int], ...]

    @cached_property
    def index(self) -> dict[int, int]:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def lower_covers(self) -> list[list[int]]:
        out = [[] for _ in self.elements]
        for lo, hi in self.covers:
            out[hi].append(lo)
        return out

    @cached_property
    def upper_covers(self) -> list[list[int]]:
        out = [[] for _ in self.elements]
        for lo, hi in self.covers:
            out[lo].append(hi)
        return out

    @property
    def bottom(self) -> int:
        return 0  # the smallest set in canonical order is the global meet

    @property
    def top(self) -> int:
        return len(self.elements) - 1

    def join(self, masks) -> int:
        """Smallest element containing the union of ``masks``."""
        union = 0
        for m in masks:
            union |= m
        return next(e for e in self.elements if union & ~e == 0)

    def vertex_sets(self) -> list[VertexSet]:
        return [VertexSet(self.universe_size, e) for e in self.elements]

    def __len__(self):
        return len(self.elements)


def build_lattice(fam: ClosedFamily) -> Lattice:
    """Covers of ``a`` are the minimal sets among ``cl(a + x)``, ``x`` outside ``a``."""
    fam.validate()
    elems = tuple(fam.sets)
    n = fam.universe_size
    arr = np.array(elems, dtype=object if n > 62 else np.int64)
    index = {e: i for i, e in enumerate(elems)}
    covers = []
    for i, a in enumerate(elems):
        cands = set()
        for x in range(n):
            if a >> x & 1:
                continue
            need = a | (1 << x)
            sup = arr[(arr & need) == need]
            closed = int(np.bitwise_and.reduce(sup)) if len(sup) else None
            if closed is not None:
                cands.add(closed)
        for c in cands:
            if not any(d != c and d & ~c == 0 for d in cands):
                covers.append((i, index[c]))
    covers.sort()
    return Lattice(n, elems, tuple(covers))


def convexity_lattice(g: Graph) -> Lattice:
    return build_lattice(enumerate_images(conv_oracle(g)))


def join_irreducibles(lat: Lattice) -> list[int]:
    """Indices of elements with exactly one lower cover."""
    return [i for i, lows in enumerate(lat.lower_covers) if len(lows) == 1]


def atoms(lat: Lattice) -> list[int]:
    return sorted(lat.upper_covers[lat.bottom])


def is_atomistic(lat: Lattice) -> bool:
    atom_masks = [lat.elements[i] for i in atoms(lat)]
    for e in lat.elements:
        below = [a for a in atom_masks if a & ~e == 0]
        if lat.join(below) != e:
            return False
    return True


@dataclass(frozen=True)
class Gradedness:
    graded: bool
    shortest: tuple[int, ...]
    longest: tuple[int, ...]

    def __bool__(self):
        return self.graded

    def as_dict(self, lat: Lattice) -> dict:
        show = lambda chain: [members(lat.elements[i]) for i in chain]  # noqa: E731
        return {"graded": self.graded, "shortest_chain": show(self.shortest), "longest_chain": show(self.longest)}


def is_graded(lat: Lattice) -> Gradedness:
    """Compare the shortest and longest maximal chains from bottom to top."""
    order = sorted(range(len(lat)), key=lambda i: popcount(lat.elements[i]))
    short = {lat.bottom: (lat.bottom,)}
    long = {lat.bottom: (lat.bottom,)}
    for i in order:
        if i not in short:
            continue
        for j in lat.upper_covers[i]:
            cand_s, cand_l = short[i] + (j,), long[i] + (j,)
            if j not in short or len(cand_s) < len(short[j]):
                short[j] = cand_s
            if j not in long or len(cand_l) > len(long[j]):
                long[j] = cand_l
    s, l_ = short[lat.top], long[lat.top]
    return Gradedness(len(s) == len(l_), s, l_)


def _connected_graphs(max_n: int, seed: int, random_trials: int):
    import networkx as nx

    for h in nx.graph_atlas_g():
        if 1 <= h.number_of_nodes() <= min(max_n, 7) and nx.is_connected(h):
            yield Graph.from_networkx(h)
    rng = np.random.default_rng(seed)
    for n in range(8, max_n + 1):
        for _ in range(random_trials):
            h = nx.gnp_random_graph(n, float(rng.uniform(0.2, 0.6)), seed=int(rng.integers(2**31)))
            if nx.is_connected(h):
                yield Graph.from_networkx(h)


def find_nongraded(max_n: int, seed: int = 0, random_trials: int = 200, limit: int | None = None):
    """Connected graphs whose convexity lattice is not graded.

    Exhaustive over the graph atlas up to 7 vertices, random for 8 and 9.
    Returns ``(graph, Gradedness)`` pairs.
    """
    if max_n > 9:
        raise ValueError("search is limited to max_n <= 9")
    found = []
    for g in _connected_graphs(max_n, seed, random_trials):
        res = is_graded(convexity_lattice(g))
        if not res.graded:
            found.append((g, res))
            if limit is not None and len(found) >= limit:
                break
    return found


def to_dot(lat: Lattice, name: str = "lattice") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, e in enumerate(lat.elements):
        label = "{" + ",".join(map(str, members(e))) + "}"
        lines.append(f'  n{i} [label="{label}"];')
    for lo, hi in lat.covers:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "Lattice",
    "Gradedness",
    "build_lattice",
    "convexity_lattice",
    "join_irreducibles",
    "atoms",
    "is_atomistic",
    "is_graded",
    "find_nongraded",
    "to_dot",
]
