"""Direct construction of the family's symmetric equilibria, one per support.

For a support ``S`` with largest element ``s`` the column strategy is built
backwards: fix the equilibrium payoff ``u``, read ``y_s`` off the diagonal,
then for each smaller ``i`` in ``S`` solve the row-``i`` indifference
equation using the already known ``y_j`` for ``j > i`` in ``S``.  Upper
triangularity makes each equation have a single unknown.  Starting from
``u = a_ss`` keeps all unnormalized weights integral for integer ``p``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .construct import BimatrixGame, Rank1Params, build_rank1_game
from .errors import SizeError
from .exact import RatMatrix, dot
from .profile import EquilibriumProfile, Support, all_supports, primitive_integer_weights

DEFAULT_CAP = 12


class NotFamilyGame(ValueError):
    """The game lacks the triangular symmetric structure the construction relies on."""


class ConstructionError(ArithmeticError):
    """The backward recursion produced a non-positive weight."""

    def __init__(self, index: int, value: Fraction):
        super().__init__(f"weight at position {index} is {value}, not positive")
        self.index = index
        self.value = value


def expected_row_payoffs(A: RatMatrix, y: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return A.matvec(y)


def check_family_structure(game: BimatrixGame) -> None:
    A, B = game.A, game.B
    m, n = A.shape
    if m != n:
        raise NotFamilyGame(f"game is {m}x{n}, not square")
    if B != A.T:
        raise NotFamilyGame("column payoffs are not the transpose of row payoffs")
    for i in range(n):
        if A[i, i] <= 0:
            raise NotFamilyGame(f"diagonal entry {i} is {A[i, i]}, not positive")
        for j in range(i):
            if A[i, j] != 0:
                raise NotFamilyGame(f"entry ({i}, {j}) below the diagonal is nonzero")


def _backward_weights(A: RatMatrix, S: Support) -> tuple[list[Fraction], Fraction]:
    n = A.rows
    order = sorted(S.indices, reverse=True)
    s = order[0]
    u = A[s, s]
    y = [Fraction(0)] * n
    y[s] = Fraction(1)
    for i in order[1:]:
        rest = sum((A[i, j] * y[j] for j in order if j > i), Fraction(0))
        yi = (u - rest) / A[i, i]
        if yi <= 0:
            raise ConstructionError(i, yi)
        y[i] = yi
    return y, u


def build_support_equilibrium(game: BimatrixGame, S: Support) -> EquilibriumProfile:
    """Symmetric equilibrium ``(y, y)`` of a family game whose support is ``S``."""
    check_family_structure(game)
    n = game.A.rows
    if not S.fits(n):
        raise ValueError(f"{S} does not fit a game with {n} strategies")
    raw, u = _backward_weights(game.A, S)
    if all(v.denominator == 1 for v in raw):
        weights = tuple(int(v) for v in raw)
    else:
        weights = primitive_integer_weights(raw)
    total = sum(raw)
    y = tuple(v / total for v in raw)
    value = u / total
    return EquilibriumProfile(x=y, y=y, payoff_row=value, payoff_col=value, weights=weights)


def enumerate_constructed_equilibria(params: Rank1Params, cap: int = DEFAULT_CAP) -> list[EquilibriumProfile]:
    """All ``2^n - 1`` constructed equilibria, by ascending support bitmask."""
    if params.n > cap:
        raise SizeError(f"n={params.n} exceeds the construction cap {cap}")
    game = build_rank1_game(params)
    return [build_support_equilibrium(game, S) for S in all_supports(params.n)]


def integer_weights(params: Rank1Params, S: Support) -> tuple[int, ...]:
    """Unnormalized weights of the recursion started from ``u = a_ss``."""
    game = build_rank1_game(params)
    if not S.fits(params.n):
        raise ValueError(f"{S} does not fit n={params.n}")
    raw, _ = _backward_weights(game.A, S)
    bad = [k for k, v in enumerate(raw) if v.denominator != 1]
    if bad:
        raise ArithmeticError(f"non-integral weights at positions {bad}: {raw}")
    return tuple(int(v) for v in raw)


def equilibrium_lambda(profile: EquilibriumProfile, alpha: Sequence[Fraction]) -> Fraction:
    """Position of the profile's row strategy along ``alpha``, i.e. ``x . alpha``."""
    return dot(profile.x, alpha)
