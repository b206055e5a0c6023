"""Exact rational linear algebra: matrices over Fraction, row reduction, null spaces.

All arithmetic is arbitrary-precision rational (``fractions.Fraction``), so
iterated pivoting can never overflow or round.  ``Fraction`` already keeps
values reduced to lowest terms with a positive denominator, which is exactly
the canonical form the exact oracles rely on for equality testing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

# Exact scalar carrier used across the package.  fractions.Fraction is a
# big-integer rational that is always normalized (denominator > 0, lowest
# terms, zero is 0/1), which is the full invariant set we need.
RationalScalar = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and strings like '3/4' or '0.25' to an exact value.

    Decimal strings convert exactly (Fraction('0.25') == 1/4); floats are
    rejected because silently taking their binary expansion is a common
    source of surprise in exact pipelines.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to an exact rational; "
                    "pass int, Fraction or a 'p/q' string")


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix of Fractions stored row-major.

    entries is a flat tuple of length rows * cols.
    """

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entry count {len(self.entries)} != rows*cols = {self.rows * self.cols}")
        if not all(isinstance(e, Fraction) for e in self.entries):
            raise TypeError("all entries must be Fraction")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence]) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(Fraction(v) if not isinstance(v, Fraction) else v for v in r)
        return cls(nrows, ncols, tuple(flat))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[Fraction(1 if i == j else 0) for j in range(n)]
                              for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, tuple(Fraction(0) for _ in range(rows * cols)))

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows,
                              tuple(self.at(i, j)
                                    for j in range(self.cols)
                                    for i in range(self.rows)))

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matmul")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum((ri[k] * other.at(k, j) for k in range(self.cols)),
                               Fraction(0)))
        return RationalMatrix(self.rows, other.cols, tuple(out))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)


def row_reduce(m: RationalMatrix) -> tuple:
    """Reduced row-echelon form by exact Gauss-Jordan elimination.

    Returns (reduced, rank, pivot_columns).  The RREF of a matrix is unique,
    so repeated application is idempotent.  Empty matrices reduce to
    themselves with rank 0.
    """
    rows = m.to_rows()
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for col in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col]
        rows[r] = [v / inv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    reduced = RationalMatrix.from_rows(rows) if nrows else m
    return reduced, len(pivots), tuple(pivots)


def rank(m: RationalMatrix) -> int:
    return row_reduce(m)[1]


def null_space_basis(m: RationalMatrix) -> RationalMatrix:
    """Exact kernel basis: columns b of the result satisfy m @ b == 0.

    The basis has cols(m) - rank(m) columns (rank-nullity); full-column-rank
    input yields a matrix with zero columns.  Construction is the standard
    one from RREF: one basis vector per free column, with -entry back-fill at
    the pivot rows and a 1 in the free coordinate.
    """
    reduced, rk, pivots = row_reduce(m)
    n = m.cols
    free = [j for j in range(n) if j not in pivots]
    basis_cols = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for i, pcol in enumerate(pivots):
            v[pcol] = -reduced.at(i, fcol)
        basis_cols.append(v)
    entries = tuple(basis_cols[j][i] for i in range(n) for j in range(len(free)))
    return RationalMatrix(n, len(free), entries)
