"""Bitmask vertex sets.

Sets over a universe ``0..n-1`` are stored as Python ints (bit ``i`` set iff
``i`` is a member). :class:`VertexSet` is the public, hashable wrapper; the
algorithms work on the raw masks.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import UniverseTooLarge

_universe_limit = int(os.environ.get("HULLKIT_MAX_UNIVERSE", "128"))


def universe_limit() -> int:
    return _universe_limit


def set_universe_limit(limit: int) -> int:
    """Change the cap on set-indexed universes; returns the previous value."""
    global _universe_limit
    if limit < 1:
        raise ValueError("limit must be positive")
    previous, _universe_limit = _universe_limit, int(limit)
    return previous


def check_universe(n: int, limit: int | None = None, what: str = "universe") -> None:
    cap = _universe_limit if limit is None else limit
    if n > cap:
        raise UniverseTooLarge(f"{what} of size {n} exceeds the limit {cap}")


def mask_of(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << int(i)
    return m


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_members(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count() if hasattr(mask, "bit_count") else bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key: by size, then lexicographically on the sorted member list."""
    ms = members(mask)
    return (len(ms), tuple(ms))


def canonical_sort(masks: Iterable[int]) -> list[int]:
    return sorted(masks, key=canonical_key)


def as_mask(s, n: int | None = None) -> int:
    """Accept a VertexSet, an int mask or an iterable of members."""
    if isinstance(s, VertexSet):
        m = s.bits
    elif isinstance(s, int):
        m = s
    else:
        m = mask_of(s)
    if n is not None and m >> n:
        raise ValueError(f"set {members(m)} is not inside universe 0..{n - 1}")
    return m


@dataclass(frozen=True)
class VertexSet:
    """A subset of ``0..universe_size-1``."""

    universe_size: int
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.universe_size:
            raise ValueError("members fall outside the universe")

    @classmethod
    def of(cls, universe_size: int, items: Iterable[int] = ()) -> "VertexSet":
        return cls(universe_size, mask_of(items))

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(members(self.bits))

    def __iter__(self):
        return iter_members(self.bits)

    def __len__(self):
        return popcount(self.bits)

    def __contains__(self, v):
        return v >= 0 and bool(self.bits >> v & 1)

    def issubset(self, other: "VertexSet") -> bool:
        return self.bits & ~as_mask(other) == 0

    def __le__(self, other):
        return self.issubset(other)

    def __lt__(self, other):
        return self.issubset(other) and self.bits != as_mask(other)

    def _wrap(self, bits):
        return VertexSet(self.universe_size, bits)

    def __or__(self, other):
        return self._wrap(self.bits | as_mask(other))

    def __and__(self, other):
        return self._wrap(self.bits & as_mask(other))

    def __sub__(self, other):
        return self._wrap(self.bits & ~as_mask(other))

    def sort_key(self):
        return canonical_key(self.bits)

    def __repr__(self):
        return f"VertexSet({list(self.members)})"
