"""Exact rational linear algebra on top of :class:`fractions.Fraction`.

Vectors are plain tuples of ``Fraction``; matrices are :class:`RatMatrix`,
an immutable dense row-major container.  Everything here is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RatVector = tuple  # tuple[Fraction, ...]

Number = Union[int, Fraction, str]


def rat(value: Number) -> Fraction:
    """Coerce ``value`` to a Fraction.  Floats are rejected on purpose."""
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass an int, Fraction or 'num/den' string")
    return Fraction(value)


def vector(values: Iterable[Number]) -> tuple[Fraction, ...]:
    return tuple(rat(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class RatMatrix:
    """Dense matrix of exact rationals."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]]) -> RatMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(rat(v) for r in rows for v in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j::self.cols]

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> RatMatrix:
        return RatMatrix(self.cols, self.rows, tuple(v for j in range(self.cols) for v in self.column(j)))

    def _check_same_shape(self, other: RatMatrix):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        self._check_same_shape(other)
        return RatMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def add_scalar(self, delta: Number) -> RatMatrix:
        delta = rat(delta)
        return RatMatrix(self.rows, self.cols, tuple(a + delta for a in self.entries))

    def scale(self, factor: Number) -> RatMatrix:
        factor = rat(factor)
        return RatMatrix(self.rows, self.cols, tuple(a * factor for a in self.entries))

    def matvec(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} does not match {self.cols} columns")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> RatMatrix:
        return RatMatrix(len(rows), len(cols), tuple(self[i, j] for i in rows for j in cols))

    def min_entry(self) -> Fraction:
        return min(self.entries)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(v) for v in self.row(i)) + "]" for i in range(self.rows))
        return f"RatMatrix([{body}])"


def outer(u: Sequence[Fraction], v: Sequence[Fraction]) -> RatMatrix:
    return RatMatrix(len(u), len(v), tuple(rat(a) * rat(b) for a in u for b in v))


def block(blocks: Sequence[Sequence[RatMatrix]]) -> RatMatrix:
    """Assemble a matrix from a grid of compatible blocks."""
    rows = []
    for block_row in blocks:
        height = block_row[0].rows
        if any(b.rows != height for b in block_row):
            raise ValueError("blocks in a row must share their row count")
        for i in range(height):
            rows.append([v for b in block_row for v in b.row(i)])
    return RatMatrix.from_rows(rows)


@dataclass(frozen=True)
class Singular:
    """Returned by :func:`solve_linear_system` when the matrix is rank deficient.

    ``consistent`` tells whether the right-hand side lies in the column
    space, i.e. whether a (non-unique) solution family exists.
    """

    rank: int
    size: int
    consistent: bool

    def __bool__(self):
        return False


def solve_linear_system(M: RatMatrix, rhs: Sequence[Fraction]) -> tuple[Fraction, ...] | Singular:
    """Solve ``M x = rhs`` exactly by Gauss-Jordan elimination.

    Returns the unique solution, or a :class:`Singular` report when ``M``
    does not have full rank.
    """
    n = M.rows
    if M.cols != n or len(rhs) != n:
        raise ValueError(f"need a square system, got {M.rows}x{M.cols} with rhs of length {len(rhs)}")
    aug = [list(M.row(i)) + [rat(rhs[i])] for i in range(n)]
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, n) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        prow = aug[rank]
        inv = 1 / prow[col]
        prow[:] = [v * inv for v in prow]
        for r in range(n):
            if r != rank and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], prow)]
        rank += 1
    if rank < n:
        consistent = all(aug[r][n] == 0 for r in range(rank, n))
        return Singular(rank=rank, size=n, consistent=consistent)
    return tuple(aug[i][n] for i in range(n))


def _integer_rows(M: RatMatrix) -> list[list[int]]:
    out = []
    for i in range(M.rows):
        r = M.row(i)
        scale = math.lcm(*(v.denominator for v in r)) if r else 1
        out.append([int(v * scale) for v in r])
    return out


def rank(M: RatMatrix) -> int:
    """Exact rank via fraction-free (Bareiss) elimination on integer rows."""
    a = _integer_rows(M)
    nrows, ncols = M.rows, M.cols
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
    return r


def inverse(M: RatMatrix) -> RatMatrix | Singular:
    n = M.rows
    cols = []
    for k in range(n):
        e = tuple(Fraction(int(i == k)) for i in range(n))
        col = solve_linear_system(M, e)
        if isinstance(col, Singular):
            return col
        cols.append(col)
    return RatMatrix(n, n, tuple(cols[j][i] for i in range(n) for j in range(n)))
