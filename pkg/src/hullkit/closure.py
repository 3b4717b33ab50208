"""Pseudo-closure oracles, axiom classification and image enumeration.

An oracle is a set function on ``2^A`` with ``A = {0..universe_size-1}``.
Sets are int bitmasks throughout this module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from .errors import NotIntersectionClosed, ResourceLimit, UniverseTooLarge
from .graph import Graph, conv_mask
from .sets import (
    VertexSet,
    as_mask,
    canonical_sort,
    check_universe,
    full_mask,
    members,
    popcount,
)

EXHAUSTIVE_LIMIT = 20
DEFAULT_TRIALS = 10_000
DEFAULT_SEED = 0


class PseudoClosureOracle:
    """A set function ``f`` with an incremental single-element extension.

    ``extend(image, w)`` must return ``f(X | {w})`` given ``image == f(X)``.
    For a pseudo-closure that is ``f(image | f({w}))``, which is the
    default; closures default to the cheaper ``f(image | {w})``.
    """

    def __init__(
        self,
        universe_size: int,
        evaluate: Callable[[int], int],
        extend: Callable[[int, int], int] | None = None,
        *,
        is_closure: bool = False,
        name: str = "oracle",
    ):
        check_universe(universe_size)
        self.universe_size = universe_size
        self._evaluate = evaluate
        self._extend = extend
        self.is_closure = is_closure
        self.name = name

    def evaluate(self, x: int) -> int:
        return self._evaluate(x)

    def extend(self, image: int, w: int) -> int:
        if self._extend is not None:
            return self._extend(image, w)
        if self.is_closure:
            return self._evaluate(image | (1 << w))
        return self._evaluate(image | self._evaluate(1 << w))

    def __call__(self, s) -> VertexSet:
        return VertexSet(self.universe_size, self.evaluate(as_mask(s, self.universe_size)))

    def __repr__(self):
        return f"PseudoClosureOracle({self.name}, |A|={self.universe_size})"


@dataclass(frozen=True)
class ClosedFamily:
    """Distinct subsets of ``0..universe_size-1`` in canonical (size, lex) order."""

    universe_size: int
    sets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(canonical_sort(set(int(s) for s in self.sets))))

    @classmethod
    def from_lists(cls, universe_size: int, sets: Iterable[Iterable[int]]) -> "ClosedFamily":
        return cls(universe_size, tuple(as_mask(s, universe_size) for s in sets))

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, s):
        return as_mask(s) in set(self.sets)

    def vertex_sets(self) -> list[VertexSet]:
        return [VertexSet(self.universe_size, s) for s in self.sets]

    def validate(self) -> None:
        """Raise :class:`NotIntersectionClosed` unless the family is a closure system."""
        full = full_mask(self.universe_size)
        present = set(self.sets)
        if full not in present:
            raise NotIntersectionClosed("family does not contain the universe", witness=None)
        for a, b in itertools.combinations(self.sets, 2):
            if a & b not in present:
                raise NotIntersectionClosed(
                    f"{members(a)} & {members(b)} = {members(a & b)} is missing",
                    witness=(VertexSet(self.universe_size, a), VertexSet(self.universe_size, b)),
                )


@dataclass
class OperatorClassification:
    extensive: bool
    increasing: bool
    idempotent: bool
    pseudo_closure_law: bool
    size_increasing: bool
    atomistic: bool
    mode: str = "exhaustive"
    seed: int | None = None
    trials: int | None = None
    counterexamples: dict[str, tuple] = field(default_factory=dict)

    @property
    def is_closure(self) -> bool:
        return self.extensive and self.increasing and self.idempotent

    def as_dict(self) -> dict:
        return {
            "extensive": self.extensive,
            "increasing": self.increasing,
            "idempotent": self.idempotent,
            "pseudo_closure_law": self.pseudo_closure_law,
            "size_increasing": self.size_increasing,
            "atomistic": self.atomistic,
            "mode": self.mode,
            "seed": self.seed,
            "trials": self.trials,
            "counterexamples": {k: [members(x) for x in v] for k, v in self.counterexamples.items()},
        }


# -- oracle constructors ----------------------------------------------------

def identity_oracle(n: int) -> PseudoClosureOracle:
    return PseudoClosureOracle(n, lambda x: x, lambda img, w: img | (1 << w), is_closure=True, name="identity")


def conv_oracle(g: Graph) -> PseudoClosureOracle:
    """Geodesic convex hull on a connected graph, with incremental extension."""
    g.require_connected()
    return PseudoClosureOracle(
        g.n,
        lambda x: conv_mask(g, x),
        lambda img, w: conv_mask(g, 1 << w, base=img),
        is_closure=True,
        name="conv",
    )


def closure_from_family(fam: ClosedFamily) -> PseudoClosureOracle:
    """``cl(X)`` = intersection of all members of ``fam`` containing ``X``."""
    fam.validate()
    sets = fam.sets
    full = full_mask(fam.universe_size)

    def evaluate(x):
        out = full
        for s in sets:
            if x & ~s == 0:
                out &= s
        return out

    return PseudoClosureOracle(fam.universe_size, evaluate, is_closure=True, name="family")


def punctured(cl: PseudoClosureOracle, x_big, x_small) -> PseudoClosureOracle:
    """``Y -> cl(Y | x_big) - x_small``: an increasing pseudo-closure, never extensive."""
    n = cl.universe_size
    big, small = as_mask(x_big, n), as_mask(x_small, n)
    if not small:
        raise ValueError("x_small must be non-empty")
    if small & ~big:
        raise ValueError("x_small must be a subset of x_big")
    if not cl.is_closure:
        raise ValueError("punctured() needs a closure")
    return PseudoClosureOracle(n, lambda y: cl.evaluate(y | big) & ~small, name=f"punctured({cl.name})")


def with_representatives(cl: PseudoClosureOracle, reps: dict[int, int]) -> PseudoClosureOracle:
    """Pseudo-closure ``X -> reps[cl(X)]``.

    ``reps`` picks, for each closed set ``H``, one of its generators; every
    pseudo-closure arises this way from the closure of its kernel. Closed
    sets missing from ``reps`` represent themselves.
    """
    for h, r in reps.items():
        if cl.evaluate(r) != h:
            raise ValueError(f"{members(r)} does not generate {members(h)}")
    return PseudoClosureOracle(
        cl.universe_size, lambda x: reps.get(cl.evaluate(x), cl.evaluate(x)), name=f"repr({cl.name})"
    )


def table_oracle(n: int, table) -> PseudoClosureOracle:
    """Oracle backed by an explicit list of images indexed by mask."""
    check_universe(n, EXHAUSTIVE_LIMIT, "table universe")
    table = [int(t) for t in table]
    if len(table) != 1 << n:
        raise ValueError("table must have 2**n entries")
    return PseudoClosureOracle(n, table.__getitem__, name="table")


# -- classification -----------------------------------------------------------

def evaluation_table(oracle: PseudoClosureOracle) -> np.ndarray:
    n = oracle.universe_size
    check_universe(n, EXHAUSTIVE_LIMIT, "exhaustive universe")
    return np.fromiter((oracle.evaluate(x) for x in range(1 << n)), dtype=np.int64, count=1 << n)


def _popcount_array(a: np.ndarray) -> np.ndarray:
    return np.unpackbits(a.astype("<u8").view(np.uint8).reshape(-1, 8), axis=1).sum(axis=1)


def _first(bad: np.ndarray):
    idx = np.flatnonzero(bad)
    return int(idx[0]) if len(idx) else None


def classify(
    oracle: PseudoClosureOracle,
    mode: str = "exhaustive",
    *,
    seed: int = DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
) -> OperatorClassification:
    """Check the closure axioms on ``oracle``.

    ``exhaustive`` covers every pair of subsets (through single-element
    chains, which is equivalent for every axiom checked). ``sampled`` draws
    ``trials`` random pairs: a ``False`` there is definitive, a ``True`` only
    means not falsified.
    """
    if mode == "exhaustive":
        return _classify_exhaustive(oracle)
    if mode == "sampled":
        return _classify_sampled(oracle, seed, trials)
    raise ValueError(f"unknown mode {mode!r}")


def _classify_exhaustive(oracle: PseudoClosureOracle) -> OperatorClassification:
    n = oracle.universe_size
    if n > EXHAUSTIVE_LIMIT:
        raise UniverseTooLarge(f"exhaustive classification needs |A| <= {EXHAUSTIVE_LIMIT}")
    f = evaluation_table(oracle)
    xs = np.arange(1 << n, dtype=np.int64)
    size = _popcount_array(f)
    cex: dict[str, tuple] = {}

    bad = (xs & ~f) != 0
    extensive = not bad.any()
    if not extensive:
        x = _first(bad)
        cex["extensive"] = (x,)

    bad = f[f] != f
    idempotent = not bad.any()
    if not idempotent:
        x = _first(bad)
        cex["idempotent"] = (x, x)

    inc_found = size_found = law_found = False
    for w in range(n):
        bit = np.int64(1) << np.int64(w)
        sel = (xs & bit) == 0
        lo, hi = xs[sel], xs[sel] | bit
        flo, fhi = f[lo], f[hi]
        if not inc_found:
            bad = (flo & ~fhi) != 0
            if bad.any():
                inc_found = True
                i = _first(bad)
                cex["increasing"] = (int(lo[i]), int(hi[i]))
        if not size_found:
            bad = (flo != fhi) & (size[lo] >= size[hi])
            if bad.any():
                size_found = True
                i = _first(bad)
                cex["size_increasing"] = (int(lo[i]), int(hi[i]))
        if not law_found and idempotent:
            bad = f[hi] != f[f[lo] | bit]
            if bad.any():
                law_found = True
                x = int(lo[_first(bad)])
                # One of these two pairs violates the law itself.
                fw = int(f[1 << w])
                if int(f[x | (1 << w)]) != int(f[int(f[x]) | fw]):
                    cex["pseudo_closure_law"] = (x, 1 << w)
                else:
                    cex["pseudo_closure_law"] = (int(f[x]), 1 << w)
    increasing = not inc_found
    size_increasing = not size_found
    law = idempotent and not law_found
    if not idempotent:
        cex["pseudo_closure_law"] = cex["idempotent"]

    atoms = [1 << x for x in range(n)]
    bad_atoms = [a for a in atoms if int(f[a]) != a]
    atomistic = not bad_atoms
    if bad_atoms:
        cex["atomistic"] = (bad_atoms[0],)
    return OperatorClassification(
        extensive, increasing, idempotent, law, size_increasing, atomistic, "exhaustive", None, None, cex
    )


def _random_mask(rng: np.random.Generator, n: int) -> int:
    if n == 0:
        return 0
    return int.from_bytes(rng.bytes((n + 7) // 8), "little") & full_mask(n)


def _classify_sampled(oracle: PseudoClosureOracle, seed: int, trials: int) -> OperatorClassification:
    n = oracle.universe_size
    f = oracle.evaluate
    rng = np.random.default_rng(seed)
    cex: dict[str, tuple] = {}
    for _ in range(trials):
        x, y = _random_mask(rng, n), _random_mask(rng, n)
        fx, fy = f(x), f(y)
        lo, hi = x & y, x
        flo = f(lo)
        if "extensive" not in cex and x & ~fx:
            cex["extensive"] = (x,)
        if "idempotent" not in cex and f(fx) != fx:
            cex["idempotent"] = (x, x)
        if "increasing" not in cex and flo & ~fx:
            cex["increasing"] = (lo, hi)
        if "size_increasing" not in cex and flo != fx and popcount(flo) >= popcount(fx):
            cex["size_increasing"] = (lo, hi)
        if "pseudo_closure_law" not in cex and f(x | y) != f(fx | fy):
            cex["pseudo_closure_law"] = (x, y)
    for a in range(n):
        if f(1 << a) != 1 << a:
            cex["atomistic"] = (1 << a,)
            break
    return OperatorClassification(
        "extensive" not in cex,
        "increasing" not in cex,
        "idempotent" not in cex,
        "pseudo_closure_law" not in cex,
        "size_increasing" not in cex,
        "atomistic" not in cex,
        "sampled",
        seed,
        trials,
        cex,
    )


# -- image enumeration --------------------------------------------------------

def lectic_key(mask: int, n: int) -> int:
    """Integer whose order is the lectic order (element 0 most significant)."""
    return sum(1 << (n - 1 - i) for i in members(mask))


def lectic_closed_sets(oracle: PseudoClosureOracle, max_sets: int | None = None) -> Iterator[int]:
    """Closed sets of a closure in increasing lectic order (NextClosure)."""
    n = oracle.universe_size
    full = full_mask(n)
    current = oracle.evaluate(0)
    count = 1
    yield current
    while current != full:
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if current & bit:
                continue
            low = bit - 1
            cand = oracle.evaluate((current & low) | bit)
            if cand & low & ~current == 0:
                current = cand
                break
        else:  # pragma: no cover - unreachable for a genuine closure
            raise RuntimeError("NextClosure stalled; is the oracle a closure?")
        count += 1
        if max_sets is not None and count > max_sets:
            raise ResourceLimit(f"more than {max_sets} closed sets")
        yield current


def enumerate_images(
    oracle: PseudoClosureOracle, strategy: str = "auto", max_sets: int | None = None
) -> ClosedFamily:
    """All distinct images of ``oracle`` in canonical order.

    ``lectic`` requires a closure; ``exhaustive`` evaluates every subset
    (``|A| <= 20``); ``auto`` picks lectic when the oracle declares itself
    a closure.
    """
    n = oracle.universe_size
    if strategy == "auto":
        strategy = "lectic" if oracle.is_closure else "exhaustive"
    if strategy == "lectic":
        return ClosedFamily(n, tuple(lectic_closed_sets(oracle, max_sets)))
    if strategy == "exhaustive":
        if n > EXHAUSTIVE_LIMIT:
            raise UniverseTooLarge(f"exhaustive enumeration needs |A| <= {EXHAUSTIVE_LIMIT}")
        images = {oracle.evaluate(x) for x in range(1 << n)}
        if max_sets is not None and len(images) > max_sets:
            raise ResourceLimit(f"more than {max_sets} images")
        return ClosedFamily(n, tuple(images))
    raise ValueError(f"unknown strategy {strategy!r}")
