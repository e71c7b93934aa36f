"""Brute-force support enumeration, used as ground truth.

This module deliberately knows nothing about the rank-1 family or the
backward construction; it only solves indifference systems.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .construct import BimatrixGame
from .errors import SizeError
from .exact import RatMatrix, Singular, solve_linear_system
from .profile import EquilibriumProfile, Support, primitive_integer_weights
from .verify import DegeneracyWitness, is_nash, nondegeneracy_check

log = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 5


class DegenerateGameError(ValueError):
    def __init__(self, message: str, witness: Optional[DegeneracyWitness] = None, pair=None):
        super().__init__(message)
        self.witness = witness
        self.pair = pair


@dataclass
class EnumerationResult:
    equilibria: list[EquilibriumProfile] = field(default_factory=list)
    supports_examined: int = 0
    singular_systems: int = 0


def _indifferent_mix(M: RatMatrix, rows: Support, cols: Support) -> tuple[Fraction, ...] | Singular:
    """Mix over ``cols`` making every row in ``rows`` earn the same payoff.

    Unknowns are the probabilities on ``cols`` plus the common payoff ``v``:
    ``M[i, J] w - v = 0`` for ``i`` in ``rows`` and ``sum(w) = 1``.
    """
    J = cols.indices
    k = len(J)
    eqs = [[M[i, j] for j in J] + [Fraction(-1)] for i in rows.indices]
    eqs.append([Fraction(1)] * k + [Fraction(0)])
    rhs = [Fraction(0)] * k + [Fraction(1)]
    return solve_linear_system(RatMatrix.from_rows(eqs), rhs)


def _spread(values, support: Support, size: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * size
    for k, v in zip(support.indices, values):
        out[k] = v
    return tuple(out)


def solve_support_pair(game: BimatrixGame, I: Support, J: Support, result: Optional[EnumerationResult] = None):
    """Equilibrium with row support ``I`` and column support ``J``, or ``None``."""
    if len(I) != len(J):
        raise ValueError("support enumeration only pairs supports of equal size")
    m, n = game.shape
    if not (I.fits(m) and J.fits(n)):
        raise ValueError(f"supports {I}, {J} do not fit a {m}x{n} game")
    y_sol = _indifferent_mix(game.A, I, J)
    x_sol = _indifferent_mix(game.B.T, J, I)
    if isinstance(y_sol, Singular) or isinstance(x_sol, Singular):
        if result is not None:
            result.singular_systems += 1
        return None
    y_part, x_part = y_sol[:-1], x_sol[:-1]
    if any(t <= 0 for t in y_part) or any(t <= 0 for t in x_part):
        return None
    x = _spread(x_part, I, m)
    y = _spread(y_part, J, n)
    cert = is_nash(game, x, y)
    if not cert:
        return None
    return EquilibriumProfile(x, y, cert.row_payoff, cert.col_payoff, weights=primitive_integer_weights(y))


def enumerate_equilibria(game: BimatrixGame, cap: int = DEFAULT_ORACLE_CAP) -> EnumerationResult:
    """All equilibria of a nondegenerate game, sorted by (row mask, column mask)."""
    m, n = game.shape
    if min(m, n) > cap:
        raise SizeError(f"{m}x{n} game exceeds the oracle cap {cap}")
    report = nondegeneracy_check(game, cap=max(m, n))
    if not report:
        raise DegenerateGameError("game is degenerate; support enumeration would be unreliable", report.witness)

    result = EnumerationResult()
    for k in range(1, min(m, n) + 1):
        for I_idx in itertools.combinations(range(m), k):
            for J_idx in itertools.combinations(range(n), k):
                result.supports_examined += 1
                eq = solve_support_pair(game, Support.of(I_idx), Support.of(J_idx), result)
                if eq is not None:
                    result.equilibria.append(eq)
    result.equilibria.sort(key=lambda e: e.sort_key)
    log.debug("examined %d support pairs, %d singular, %d equilibria",
              result.supports_examined, result.singular_systems, len(result.equilibria))
    return result
