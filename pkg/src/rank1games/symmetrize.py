"""Symmetrization ``C = [[0, A], [B^T, 0]]`` and the pairing of equilibria.

Any two equilibria ``(x, y)`` and ``(x', y')`` of a positive game ``(A, B)``
combine into an equilibrium of the symmetric game ``(C, C^T)``: the first
player mixes ``x`` with ``y'`` and the second mixes ``x'`` with ``y``, with
block weights chosen so both blocks of each player's strategy earn the same
payoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .construct import BimatrixGame, positivity_shift, shift_payoffs
from .exact import RatMatrix, block
from .profile import EquilibriumProfile
from .verify import InputError, is_nash


@dataclass(frozen=True)
class SymmetrizedGame:
    base: BimatrixGame  # positive version of the input game
    C: RatMatrix
    block_split: int
    shift: Fraction = Fraction(0)

    @property
    def game(self) -> BimatrixGame:
        """The symmetric game ``(C, C^T)`` actually played."""
        return BimatrixGame(self.C, self.C.T, f"symmetrized {self.base.label}".strip())


def symmetrize(game: BimatrixGame) -> SymmetrizedGame:
    delta = positivity_shift(game)
    base = shift_payoffs(game, delta)
    m, n = base.shape
    C = block([
        [RatMatrix.zeros(m, m), base.A],
        [base.B.T, RatMatrix.zeros(n, n)],
    ])
    return SymmetrizedGame(base=base, C=C, block_split=m, shift=delta)


def pair_scalars(u: Fraction, v: Fraction, u2: Fraction, v2: Fraction) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Block weights ``(sigma, tau, nu, mu)`` for the pair with payoffs ``(u, v)`` and ``(u2, v2)``.

    ``mu * u == nu * v2`` and ``sigma * v == tau * u2``, each pair summing to 1.
    """
    mu = v2 / (u + v2)
    nu = u / (u + v2)
    sigma = u2 / (u2 + v)
    tau = v / (u2 + v)
    return sigma, tau, nu, mu


def pair_to_equilibrium(sym: SymmetrizedGame, eq1: EquilibriumProfile, eq2: EquilibriumProfile) -> EquilibriumProfile:
    """Combine two equilibria of ``sym.base`` into one of ``(C, C^T)``.

    Profiles are interpreted in the base game; payoffs are recomputed there,
    so equilibria of the unshifted game can be passed in directly.
    """
    certs = []
    for name, eq in (("first", eq1), ("second", eq2)):
        cert = is_nash(sym.base, eq.x, eq.y)
        if not cert:
            raise InputError(f"{name} profile is not an equilibrium of the base game: {cert.violation}")
        certs.append(cert)
    u, v = certs[0].row_payoff, certs[0].col_payoff
    u2, v2 = certs[1].row_payoff, certs[1].col_payoff
    sigma, tau, nu, mu = pair_scalars(u, v, u2, v2)

    row = tuple(sigma * t for t in eq1.x) + tuple(tau * t for t in eq2.y)
    col = tuple(nu * t for t in eq2.x) + tuple(mu * t for t in eq1.y)
    cert = is_nash(sym.game, row, col)
    if not cert:
        raise ArithmeticError(f"paired profile failed certification: {cert.violation}")
    return EquilibriumProfile(row, col, cert.row_payoff, cert.col_payoff)


def product_equilibria(sym: SymmetrizedGame, eqs: Sequence[EquilibriumProfile]) -> list[EquilibriumProfile]:
    out = [pair_to_equilibrium(sym, a, b) for a in eqs for b in eqs]
    out.sort(key=lambda e: e.sort_key)
    if len(set(out)) != len(out):
        raise ArithmeticError("pairing produced duplicate profiles")
    return out
