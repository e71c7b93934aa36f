"""Supports and equilibrium profiles shared by the construction and the oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class Support:
    """Set of pure-strategy positions (zero-based array positions).

    Ordered and hashed by bitmask, where position ``k`` is bit ``k``.
    """

    mask: int

    def __post_init__(self):
        if self.mask <= 0:
            raise ValueError("a support must be nonempty")

    @classmethod
    def of(cls, positions: Iterable[int]) -> Support:
        mask = 0
        for k in positions:
            if k < 0:
                raise ValueError(f"negative strategy position {k}")
            mask |= 1 << k
        return cls(mask)

    @classmethod
    def from_labels(cls, labels: Iterable[int], first: int = 1) -> Support:
        """Build from strategy labels numbered from ``first`` (1 for the usual one-based numbering)."""
        return cls.of(label - first for label in labels)

    @classmethod
    def of_vector(cls, v: Sequence[Fraction]) -> Support:
        return cls.of(k for k, value in enumerate(v) if value > 0)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.mask.bit_length()) if self.mask >> k & 1)

    def labels(self, first: int = 1) -> tuple[int, ...]:
        return tuple(k + first for k in self.indices)

    def __contains__(self, k: int) -> bool:
        return k >= 0 and bool(self.mask >> k & 1)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def issubset(self, other: Support) -> bool:
        return self.mask & ~other.mask == 0

    def fits(self, n: int) -> bool:
        return self.mask.bit_length() <= n

    def __repr__(self) -> str:
        return f"Support({set(self.indices)})"


def all_supports(n: int) -> list[Support]:
    """Every nonempty support over ``n`` strategies, by ascending bitmask."""
    return [Support(mask) for mask in range(1, 1 << n)]


def primitive_integer_weights(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Smallest integer vector proportional to the nonnegative vector ``v``."""
    scale = math.lcm(*(x.denominator for x in v))
    ints = [int(x * scale) for x in v]
    g = math.gcd(*ints) or 1
    return tuple(k // g for k in ints)


@dataclass(frozen=True)
class EquilibriumProfile:
    """A mixed strategy pair with its supports and payoffs.

    ``weights`` records unnormalized values of ``y`` that produced it; it is
    bookkeeping and does not take part in equality.
    """

    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    payoff_row: Fraction
    payoff_col: Fraction
    weights: tuple[int, ...] = field(default=(), compare=False)

    @property
    def support_x(self) -> Support:
        return Support.of_vector(self.x)

    @property
    def support_y(self) -> Support:
        return Support.of_vector(self.y)

    @property
    def sort_key(self) -> tuple[int, int, tuple, tuple]:
        return (self.support_x.mask, self.support_y.mask, self.x, self.y)

    @property
    def is_symmetric(self) -> bool:
        return self.x == self.y
