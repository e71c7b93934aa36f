"""The rank-1 game family with exponentially many equilibria.

Row ``i``, column ``j`` (one-based) of the row player's matrix is::

    2 p^(i+j)   if j > i
    p^(2i)      if j = i
    0           if j < i

and the column player's matrix is its transpose.  The zero-based variant
numbers strategies ``0..n-1`` instead, which divides every payoff by ``p^2``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .exact import RatMatrix, outer, rat


class Indexing(str, enum.Enum):
    ONE_BASED = "one-based"
    ZERO_BASED = "zero-based-normalized"


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class Rank1Params:
    p: int
    n: int
    indexing: Indexing = Indexing.ONE_BASED

    def __post_init__(self):
        # bool is an int subclass; Fraction(7, 1) is not accepted either
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise ParameterError(f"p must be an exact integer, got {self.p!r}")
        if self.p <= 2:
            raise ParameterError(f"p must exceed 2, got {self.p}")
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ParameterError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "indexing", Indexing(self.indexing))

    @property
    def first(self) -> int:
        """Label of the first pure strategy (1 or 0)."""
        return 1 if self.indexing is Indexing.ONE_BASED else 0

    def labels(self) -> range:
        return range(self.first, self.first + self.n)

    @property
    def label(self) -> str:
        return f"rank1 p={self.p} n={self.n} {self.indexing.value}"


@dataclass(frozen=True)
class BimatrixGame:
    A: RatMatrix
    B: RatMatrix
    label: str = ""

    def __post_init__(self):
        if self.A.shape != self.B.shape:
            raise ValueError(f"payoff matrices differ in shape: {self.A.shape} vs {self.B.shape}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.A.shape

    @classmethod
    def from_rows(cls, A, B, label: str = "") -> BimatrixGame:
        return cls(RatMatrix.from_rows(A), RatMatrix.from_rows(B), label)

    def __eq__(self, other):
        # labels are provenance only
        if not isinstance(other, BimatrixGame):
            return NotImplemented
        return self.A == other.A and self.B == other.B

    def __hash__(self):
        return hash((self.A, self.B))


def payoff(p: int, i: int, j: int) -> int:
    """Entry of the family's row-player matrix at labels ``i``, ``j``."""
    if j > i:
        return 2 * p ** (i + j)
    if j == i:
        return p ** (2 * i)
    return 0


def build_rank1_game(params: Rank1Params) -> BimatrixGame:
    labels = params.labels()
    A = RatMatrix.from_rows([[payoff(params.p, i, j) for j in labels] for i in labels])
    return BimatrixGame(A, A.T, params.label)


def rank1_factors(params: Rank1Params) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Vectors ``alpha``, ``beta`` with ``A + B == outer(alpha, beta)``."""
    alpha = tuple(Fraction(params.p ** i) for i in params.labels())
    beta = tuple(Fraction(2 * params.p ** j) for j in params.labels())
    return alpha, beta


def shift_payoffs(game: BimatrixGame, delta) -> BimatrixGame:
    """Add ``delta`` to every payoff of both players.

    Equilibria are unchanged, since every expected payoff moves by ``delta``.
    """
    delta = rat(delta)
    if delta == 0:
        return game
    label = f"{game.label} shifted by {delta}" if game.label else f"shifted by {delta}"
    return BimatrixGame(game.A.add_scalar(delta), game.B.add_scalar(delta), label)


def positivity_shift(game: BimatrixGame) -> Fraction:
    """Smallest-effort shift making every payoff positive: ``1 - min`` if needed, else 0."""
    low = min(game.A.min_entry(), game.B.min_entry())
    return Fraction(1) - low if low <= 0 else Fraction(0)


def rank_one_sum(params: Rank1Params) -> RatMatrix:
    alpha, beta = rank1_factors(params)
    return outer(alpha, beta)
