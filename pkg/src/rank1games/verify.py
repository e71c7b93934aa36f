"""Exact Nash certificates and nondegeneracy checking for arbitrary bimatrix games."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .construct import BimatrixGame, positivity_shift, shift_payoffs
from .errors import SizeError
from .exact import RatMatrix, dot, solve_linear_system
from .profile import Support

DEFAULT_NONDEGENERACY_CAP = 6


class InputError(ValueError):
    """A strategy vector is not a probability distribution of the right length."""


@dataclass(frozen=True)
class Violation:
    player: str  # "row" or "column"
    strategy: int  # a pure best response the player is not restricted to
    gap: Fraction  # best achievable payoff minus the payoff actually obtained


@dataclass(frozen=True)
class NashCertificate:
    is_equilibrium: bool
    row_payoff: Fraction
    col_payoff: Fraction
    row_best_responses: Support
    col_best_responses: Support
    violation: Optional[Violation] = None

    def __bool__(self):
        return self.is_equilibrium


@dataclass(frozen=True)
class DegeneracyWitness:
    player: str  # whose mixed strategy has too many best responses
    strategy: tuple[Fraction, ...]
    support_size: int
    best_response_count: int


@dataclass(frozen=True)
class DegeneracyReport:
    nondegenerate: bool
    witness: Optional[DegeneracyWitness] = None
    vertices_checked: int = 0

    def __bool__(self):
        return self.nondegenerate


def best_responses(M: RatMatrix, strategy: Sequence[Fraction]) -> Support:
    """Rows of ``M`` maximizing ``M @ strategy``.

    For the column player pass ``B.T`` together with the row strategy.
    """
    payoffs = M.matvec(strategy)
    top = max(payoffs)
    return Support.of(i for i, v in enumerate(payoffs) if v == top)


def check_mixed_strategy(v: Sequence[Fraction], size: int, who: str) -> tuple[Fraction, ...]:
    if len(v) != size:
        raise InputError(f"{who} strategy has length {len(v)}, expected {size}")
    v = tuple(Fraction(t) for t in v)
    if any(t < 0 for t in v):
        raise InputError(f"{who} strategy has a negative entry: {v}")
    if sum(v) != 1:
        raise InputError(f"{who} strategy sums to {sum(v)}, not 1")
    return v


def is_nash(game: BimatrixGame, x: Sequence[Fraction], y: Sequence[Fraction]) -> NashCertificate:
    m, n = game.shape
    x = check_mixed_strategy(x, m, "row")
    y = check_mixed_strategy(y, n, "column")
    row_payoffs = game.A.matvec(y)
    col_payoffs = game.B.T.matvec(x)
    row_value = dot(x, row_payoffs)
    col_value = dot(y, col_payoffs)
    row_br = best_responses(game.A, y)
    col_br = best_responses(game.B.T, x)

    violation = None
    if not Support.of_vector(x).issubset(row_br):
        violation = Violation("row", row_br.indices[0], max(row_payoffs) - row_value)
    elif not Support.of_vector(y).issubset(col_br):
        violation = Violation("column", col_br.indices[0], max(col_payoffs) - col_value)
    return NashCertificate(
        is_equilibrium=violation is None,
        row_payoff=row_value,
        col_payoff=col_value,
        row_best_responses=row_br,
        col_best_responses=col_br,
        violation=violation,
    )


def polytope_vertices(M: RatMatrix) -> list[tuple[tuple[Fraction, ...], int]]:
    """Vertices of ``{z >= 0, M z <= 1}`` with their number of tight constraints.

    ``M`` must be entrywise positive so the polytope is bounded.  Each vertex
    is found by making ``d`` constraints tight (``d`` = number of columns)
    and is reported once.
    """
    rows, d = M.shape
    # constraint k < d is z_k >= 0; constraint d + i is (M z)_i <= 1
    seen = {}
    for tight in itertools.combinations(range(d + rows), d):
        eqs = []
        rhs = []
        for k in tight:
            if k < d:
                eqs.append([Fraction(int(j == k)) for j in range(d)])
                rhs.append(Fraction(0))
            else:
                eqs.append(list(M.row(k - d)))
                rhs.append(Fraction(1))
        z = solve_linear_system(RatMatrix.from_rows(eqs), rhs)
        if not z or z in seen:
            continue
        if any(t < 0 for t in z):
            continue
        Mz = M.matvec(z)
        if any(v > 1 for v in Mz):
            continue
        seen[z] = sum(t == 0 for t in z) + sum(v == 1 for v in Mz)
    return list(seen.items())


def _degenerate_vertex(M: RatMatrix, player: str) -> tuple[Optional[DegeneracyWitness], int]:
    d = M.cols
    vertices = polytope_vertices(M)
    for z, labels in vertices:
        if labels > d:
            total = sum(z)
            strategy = tuple(t / total for t in z)
            support = sum(t > 0 for t in z)
            br = sum(v == 1 for v in M.matvec(z))
            return DegeneracyWitness(player, strategy, support, br), len(vertices)
    return None, len(vertices)


def nondegeneracy_check(game: BimatrixGame, cap: int = DEFAULT_NONDEGENERACY_CAP) -> DegeneracyReport:
    """Decide nondegeneracy by counting tight constraints at every vertex
    of both best-response polytopes.

    A vertex with more tight constraints than the dimension is a mixed
    strategy with more pure best responses than its support size.
    """
    m, n = game.shape
    if max(m, n) > cap:
        raise SizeError(f"{m}x{n} game exceeds the nondegeneracy cap {cap}")
    game = shift_payoffs(game, positivity_shift(game))
    checked = 0
    # column strategies y live in {y >= 0, A y <= 1}; row strategies x in {x >= 0, B^T x <= 1}
    for M, player in ((game.A, "column"), (game.B.T, "row")):
        witness, count = _degenerate_vertex(M, player)
        checked += count
        if witness is not None:
            return DegeneracyReport(False, witness, checked)
    return DegeneracyReport(True, None, checked)
