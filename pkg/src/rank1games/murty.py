"""Murty's parametric LP and an exact right-hand-side parametric simplex.

The instance is::

    optimize   c . z   subject to   A z >= b + lambda * 1,   z >= 0

with ``A`` the family matrix at ``p = 1`` (1 on the diagonal, 2 above),
``c_j = 4^(n-j)`` and ``b_i = -2^(n-i)``.  Read literally as a maximization
it is unbounded for every ``lambda`` (``c > 0`` and only lower bounds), so
the objective sense is explicit and defaults to minimization.

Internally every problem is put in equality form ``[A, -I] (z, s) = rhs``
(``+I`` for ``<=`` rows) and minimized; reported values are in the
problem's own sense.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact import RatMatrix, Singular, dot, inverse, rat, vector

PIVOT_RULE = "least-index (Bland)"


class Sense(str, enum.Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"


class Direction(str, enum.Enum):
    GEQ = "geq"
    LEQ = "leq"


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class CyclingError(RuntimeError):
    def __init__(self, message: str, history):
        super().__init__(message)
        self.history = history


@dataclass(frozen=True)
class ParametricLP:
    A: RatMatrix
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]
    sense: Sense = Sense.MINIMIZE
    direction: Direction = Direction.GEQ

    def __post_init__(self):
        if len(self.b) != self.A.rows or len(self.c) != self.A.cols:
            raise ValueError(f"b has {len(self.b)} and c has {len(self.c)} entries for a {self.A.rows}x{self.A.cols} matrix")
        object.__setattr__(self, "sense", Sense(self.sense))
        object.__setattr__(self, "direction", Direction(self.direction))

    def rhs(self, lam) -> tuple[Fraction, ...]:
        lam = rat(lam)
        return tuple(bi + lam for bi in self.b)

    @property
    def n_vars(self) -> int:
        """Structural plus slack variables."""
        return self.A.cols + self.A.rows

    def standard_matrix(self) -> RatMatrix:
        m, n = self.A.shape
        sign = -1 if self.direction is Direction.GEQ else 1
        return RatMatrix.from_rows(
            [list(self.A.row(i)) + [sign * int(i == k) for k in range(m)] for i in range(m)]
        )

    def min_costs(self) -> tuple[Fraction, ...]:
        sign = 1 if self.sense is Sense.MINIMIZE else -1
        return tuple(sign * v for v in self.c) + (Fraction(0),) * self.A.rows

    def from_min(self, value: Fraction) -> Fraction:
        return value if self.sense is Sense.MINIMIZE else -value


def murty_instance(n: int, sense: Sense | str = Sense.MINIMIZE) -> ParametricLP:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    A = RatMatrix.from_rows([[2 if j > i else 1 if j == i else 0 for j in range(1, n + 1)] for i in range(1, n + 1)])
    c = vector(4 ** (n - j) for j in range(1, n + 1))
    b = vector(-(2 ** (n - i)) for i in range(1, n + 1))
    return ParametricLP(A, b, c, Sense(sense), Direction.GEQ)


@dataclass(frozen=True)
class LPSolution:
    status: Status
    value: Optional[Fraction] = None
    z: Optional[tuple[Fraction, ...]] = None
    basis: Optional[tuple[int, ...]] = None


def _simplex(T: list[list[Fraction]], basis: list[int], cost: Sequence[Fraction], allowed: int) -> bool:
    """Minimize ``cost`` over tableau ``T`` (rows ``[coeffs..., rhs]``) in place.

    Only columns ``< allowed`` may enter.  Least-index entering and leaving
    rules.  Returns False when unbounded.
    """
    m = len(T)
    while True:
        cb = [cost[k] for k in basis]
        entering = None
        for j in range(allowed):
            if j in basis:
                continue
            reduced = cost[j] - sum((cb[i] * T[i][j] for i in range(m)), Fraction(0))
            if reduced < 0:
                entering = j
                break
        if entering is None:
            return True
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], entering)


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, j: int) -> None:
    piv = T[r][j]
    T[r] = [v / piv for v in T[r]]
    for i in range(len(T)):
        if i != r and T[i][j] != 0:
            f = T[i][j]
            T[i] = [a - f * b for a, b in zip(T[i], T[r])]
    basis[r] = j


def solve_at(lp: ParametricLP, lam) -> LPSolution:
    """Solve the LP at a fixed parameter value with a two-phase exact simplex."""
    M = lp.standard_matrix()
    m, nv = M.shape
    rhs = lp.rhs(lam)
    # phase 1: one artificial per row, rows sign-flipped so rhs >= 0
    T = []
    for i in range(m):
        sign = -1 if rhs[i] < 0 else 1
        T.append([sign * v for v in M.row(i)] + [Fraction(int(i == k)) for k in range(m)] + [sign * rhs[i]])
    basis = list(range(nv, nv + m))
    phase1 = (Fraction(0),) * nv + (Fraction(1),) * m
    _simplex(T, basis, phase1, nv + m)
    if sum(T[i][-1] for i in range(m) if basis[i] >= nv) > 0:
        return LPSolution(Status.INFEASIBLE)
    for i in range(m):
        if basis[i] >= nv:
            j = next((j for j in range(nv) if T[i][j] != 0 and j not in basis), None)
            if j is None:
                raise ArithmeticError("constraint matrix is rank deficient")
            _pivot(T, basis, i, j)
    T = [row[:nv] + [row[-1]] for row in T]
    cost = lp.min_costs()
    if not _simplex(T, basis, cost, nv):
        return LPSolution(Status.UNBOUNDED)
    x = [Fraction(0)] * nv
    for i, k in enumerate(basis):
        x[k] = T[i][-1]
    value = dot(cost, x)
    return LPSolution(Status.OPTIMAL, lp.from_min(value), tuple(x[:lp.A.cols]), tuple(sorted(basis)))


@dataclass(frozen=True)
class PathSegment:
    lambda_lo: Optional[Fraction]  # None means -infinity
    lambda_hi: Optional[Fraction]  # None means +infinity
    basis: tuple[int, ...]
    value_slope: Fraction
    value_intercept: Fraction

    def contains(self, lam: Fraction) -> bool:
        return (self.lambda_lo is None or self.lambda_lo <= lam) and (self.lambda_hi is None or lam <= self.lambda_hi)

    def value(self, lam) -> Fraction:
        return self.value_intercept + self.value_slope * rat(lam)


@dataclass
class PathTrace:
    segments: list[PathSegment] = field(default_factory=list)
    breakpoints: list[Fraction] = field(default_factory=list)
    infeasible_below: bool = False
    infeasible_above: bool = False
    unbounded: bool = False
    anchor: Optional[Fraction] = None
    pivots: int = 0
    pivot_rule: str = PIVOT_RULE

    def value(self, lam) -> Optional[Fraction]:
        """Optimal value from the traced segments; None outside the traced range."""
        lam = rat(lam)
        for seg in self.segments:
            if seg.contains(lam):
                return seg.value(lam)
        return None


@dataclass(frozen=True)
class _BasisData:
    basis: tuple[int, ...]
    Binv: RatMatrix
    x0: tuple[Fraction, ...]  # basic values at lambda = 0
    x1: tuple[Fraction, ...]  # their rate of change in lambda
    lo: Optional[Fraction]
    hi: Optional[Fraction]


def _basis_data(lp: ParametricLP, M: RatMatrix, basis: tuple[int, ...]) -> _BasisData:
    B = M.submatrix(range(M.rows), basis)
    Binv = inverse(B)
    if isinstance(Binv, Singular):
        raise ArithmeticError(f"basis {basis} is singular")
    x0 = Binv.matvec(lp.b)
    x1 = Binv.matvec((Fraction(1),) * M.rows)
    lo = hi = None
    for v0, v1 in zip(x0, x1):
        if v1 > 0:
            bound = -v0 / v1
            lo = bound if lo is None else max(lo, bound)
        elif v1 < 0:
            bound = -v0 / v1
            hi = bound if hi is None else min(hi, bound)
        elif v0 < 0:
            raise ArithmeticError(f"basis {basis} is infeasible for every lambda")
    return _BasisData(basis, Binv, x0, x1, lo, hi)


def _segment(lp: ParametricLP, data: _BasisData) -> PathSegment:
    cost = lp.min_costs()
    cb = [cost[k] for k in data.basis]
    return PathSegment(
        lambda_lo=data.lo,
        lambda_hi=data.hi,
        basis=data.basis,
        value_slope=lp.from_min(dot(cb, data.x1)),
        value_intercept=lp.from_min(dot(cb, data.x0)),
    )


def _dual_pivot(lp: ParametricLP, M: RatMatrix, data: _BasisData, upward: bool) -> Optional[tuple[int, ...]]:
    """Basis exchange at the interval end in the direction of travel.

    The leaving variable is the smallest-index basic variable that turns
    negative past the boundary; the entering one passes the dual ratio
    test with least-index tie-breaking.  None when no exchange exists,
    i.e. the LP is infeasible beyond the boundary.
    """
    edge = data.hi if upward else data.lo
    leaving_rows = [
        r for r, (v0, v1) in enumerate(zip(data.x0, data.x1))
        if (v1 < 0 if upward else v1 > 0) and -v0 / v1 == edge
    ]
    r = min(leaving_rows, key=lambda k: data.basis[k])
    cost = lp.min_costs()
    cb = [cost[k] for k in data.basis]
    y = [dot(cb, data.Binv.column(i)) for i in range(M.rows)]
    row = data.Binv.row(r)
    best = None
    for j in range(M.cols):
        if j in data.basis:
            continue
        a_j = M.column(j)
        alpha = dot(row, a_j)
        # the leaving variable is negative past the edge in either direction;
        # only a negative pivot-row entry can lift it back to zero
        if alpha >= 0:
            continue
        reduced = cost[j] - dot(y, a_j)
        ratio = reduced / abs(alpha)
        if best is None or ratio < best[0]:
            best = (ratio, j)
    if best is None:
        return None
    new = list(data.basis)
    new[r] = best[1]
    return tuple(sorted(new))


def _anchor(lp: ParametricLP, max_doublings: int = 64) -> tuple[Fraction, LPSolution] | None:
    lam0 = min(-v for v in lp.b) - 1 if lp.b else Fraction(0)
    sol = solve_at(lp, lam0)
    if sol.status is not Status.INFEASIBLE:
        return lam0, sol
    for k in range(max_doublings):
        for lam in (lam0 - 2 ** k, lam0 + 2 ** k):
            sol = solve_at(lp, lam)
            if sol.status is not Status.INFEASIBLE:
                return Fraction(lam), sol
    return None


def _walk(lp: ParametricLP, M: RatMatrix, start: _BasisData, upward: bool, trace: PathTrace) -> list[PathSegment]:
    segments = []
    data = start
    while True:
        edge = data.hi if upward else data.lo
        if edge is None:
            return segments
        seen = {data.basis}
        history = [data.basis]
        while True:
            nxt = _dual_pivot(lp, M, data, upward)
            trace.pivots += 1
            if nxt is None:
                if upward:
                    trace.infeasible_above = True
                else:
                    trace.infeasible_below = True
                return segments
            if nxt in seen:
                raise CyclingError(f"basis {nxt} revisited at lambda={edge}", history + [nxt])
            seen.add(nxt)
            history.append(nxt)
            data = _basis_data(lp, M, nxt)
            far = data.hi if upward else data.lo
            # a basis valid only at the breakpoint itself contributes no segment
            if far is None or far != edge:
                break
        segments.append(_segment(lp, data))


def trace_path(lp: ParametricLP) -> PathTrace:
    """Follow the optimal basis over all lambda by parametric dual pivots."""
    trace = PathTrace()
    found = _anchor(lp)
    if found is None:
        trace.infeasible_below = trace.infeasible_above = True
        return trace
    lam0, sol = found
    trace.anchor = lam0
    if sol.status is Status.UNBOUNDED:
        # dual feasibility does not depend on lambda
        trace.unbounded = True
        return trace
    M = lp.standard_matrix()
    start = _basis_data(lp, M, sol.basis)
    below = _walk(lp, M, start, upward=False, trace=trace)
    above = _walk(lp, M, start, upward=True, trace=trace)
    trace.segments = below[::-1] + [_segment(lp, start)] + above
    trace.breakpoints = [seg.lambda_hi for seg in trace.segments[:-1]]
    return trace


def grid_oracle(lp: ParametricLP, lambdas: Sequence) -> list[tuple[Fraction, Status, Optional[Fraction]]]:
    """Independent per-lambda solves, sharing nothing with :func:`trace_path`."""
    out = []
    for lam in lambdas:
        sol = solve_at(lp, lam)
        out.append((rat(lam), sol.status, sol.value))
    return out


def lambda_grid(lo, hi, step) -> list[Fraction]:
    lo, hi, step = rat(lo), rat(hi), rat(step)
    count = math.floor((hi - lo) / step)
    return [lo + k * step for k in range(count + 1)]
