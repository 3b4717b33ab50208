"""Minimum generators for every image of a pseudo-closure."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .closure import EXHAUSTIVE_LIMIT, ClosedFamily, PseudoClosureOracle, classify
from .errors import ImagesIncomplete, UniverseTooLarge
from .sets import VertexSet, canonical_key, full_mask, mask_of, members, popcount


@dataclass
class GeneratorTable:
    """``labels[H]`` is a generator of image ``H`` (both int masks).

    ``iterations`` counts passes of the outer refinement loop and
    ``updates`` the number of label rewrites; both stay 0 for the
    brute-force reference.
    """

    universe_size: int
    labels: dict[int, int]
    iterations: int = 0
    updates: int = 0
    history: list[tuple[int, int]] = field(default_factory=list, repr=False)

    def label(self, image) -> VertexSet:
        key = image.bits if isinstance(image, VertexSet) else image
        return VertexSet(self.universe_size, self.labels[key])

    def sizes(self) -> dict[int, int]:
        return {h: popcount(g) for h, g in self.labels.items()}

    def __len__(self):
        return len(self.labels)

    def as_dict(self) -> dict:
        order = sorted(self.labels, key=canonical_key)
        return {
            "universe_size": self.universe_size,
            "iterations": self.iterations,
            "updates": self.updates,
            "labels": [{"image": members(h), "generator": members(self.labels[h])} for h in order],
        }


def min_gen(
    oracle: PseudoClosureOracle,
    images: ClosedFamily,
    *,
    debug: bool = False,
    record_history: bool = False,
) -> GeneratorTable:
    """Refine labels until every image carries a minimum generator.

    Images are scanned by increasing size starting from size 0, so an
    empty ``f(empty)`` is extended too; within a size in lexicographic
    order, and ``z`` ascending. A label is only replaced by a strictly
    smaller generator.
    """
    n = oracle.universe_size
    if debug and n <= 10:
        c = classify(oracle)
        if not c.pseudo_closure_law:
            raise ValueError("oracle violates the pseudo-closure law")
    order = sorted(images.sets, key=canonical_key)
    labels = {h: h for h in order}
    size = {h: popcount(h) for h in order}
    bottom = oracle.evaluate(0)
    if bottom not in labels:
        raise ImagesIncomplete(f"f(empty) = {members(bottom)} is not among the images", witness=VertexSet(n, 0))
    labels[bottom] = 0
    size[bottom] = 0
    table = GeneratorTable(n, labels)
    extend = oracle.extend
    full = full_mask(n)

    cont = True
    while cont:
        cont = False
        table.iterations += 1
        for y in order:
            ly = labels[y]
            r_size = size[y] + 1
            free = full & ~ly
            while free:
                low = free & -free
                free ^= low
                z = low.bit_length() - 1
                fr = extend(y, z)
                cur = size.get(fr)
                if cur is None:
                    raise ImagesIncomplete(
                        f"f({members(ly | low)}) = {members(fr)} is not among the images",
                        witness=VertexSet(n, ly | low),
                    )
                if r_size < cur:
                    r = ly | low
                    if debug and oracle.evaluate(r) != fr:
                        raise AssertionError("extend() disagrees with evaluate()")
                    labels[fr] = r
                    size[fr] = r_size
                    table.updates += 1
                    if record_history:
                        table.history.append((fr, r))
                    cont = True
    return table


def brute_force_min_gen(oracle: PseudoClosureOracle) -> GeneratorTable:
    """First subset, in (size, lex) order, reaching each image."""
    n = oracle.universe_size
    if n > EXHAUSTIVE_LIMIT:
        raise UniverseTooLarge(f"brute force needs |A| <= {EXHAUSTIVE_LIMIT}")
    labels: dict[int, int] = {}
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            x = mask_of(combo)
            labels.setdefault(oracle.evaluate(x), x)
    return GeneratorTable(n, labels)


@dataclass(frozen=True)
class MGSAnswer:
    """Outcome of the bounded minimum-generating-set question.

    ``verdict`` is ``"yes"``, ``"no"`` or ``"unreachable"`` (the full
    universe is not an image).
    """

    verdict: str
    witness: VertexSet | None
    minimum: int | None

    def __bool__(self):
        return self.verdict == "yes"


def mgs_decision(oracle: PseudoClosureOracle, images: ClosedFamily, k: int) -> MGSAnswer:
    n = oracle.universe_size
    full = full_mask(n)
    if full not in images.sets:
        return MGSAnswer("unreachable", None, None)
    table = min_gen(oracle, images)
    best = table.labels[full]
    size = popcount(best)
    if size <= k:
        return MGSAnswer("yes", VertexSet(n, best), size)
    return MGSAnswer("no", None, size)
