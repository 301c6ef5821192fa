"""Immutable dense matrices over Z or Q.

Entries are Python ints or ``gmpy2.mpq`` rationals.  A matrix keeps its shape
explicitly so that 0 x n and n x 0 matrices compose correctly.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from gmpy2 import mpq

Rational = mpq


def to_rational(x) -> mpq:
    if isinstance(x, str):
        num, _, den = x.partition("/")
        return mpq(int(num), int(den) if den else 1)
    return mpq(x)


def is_integral(x) -> bool:
    return isinstance(x, int) or x.denominator == 1


def as_int(x) -> int:
    if isinstance(x, int):
        return x
    if x.denominator != 1:
        raise ValueError(f"{x} is not an integer")
    return int(x.numerator)


class Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("shape of an empty matrix is ambiguous; pass ncols")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Matrix:
        return cls([(0,) * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([tuple(int(i == j) for j in range(n)) for i in range(n)], n)

    @classmethod
    def column(cls, vec: Sequence) -> Matrix:
        return cls([(x,) for x in vec], 1)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> Matrix:
        if not cols:
            return cls.zeros(nrows, 0)
        return cls(zip(*cols), len(cols)) if nrows else cls.zeros(0, len(cols))

    @classmethod
    def diagonal(cls, entries: Sequence) -> Matrix:
        n = len(entries)
        return cls([tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)], n)

    @classmethod
    def block_diagonal(cls, blocks: Sequence[Matrix]) -> Matrix:
        ncols = sum(b.ncols for b in blocks)
        rows = []
        offset = 0
        for b in blocks:
            left = (0,) * offset
            right = (0,) * (ncols - offset - b.ncols)
            rows.extend(left + r + right for r in b.rows)
            offset += b.ncols
        return cls(rows, ncols)

    @classmethod
    def hstack(cls, blocks: Sequence[Matrix], nrows: int | None = None) -> Matrix:
        if not blocks:
            return cls.zeros(nrows or 0, 0)
        n = blocks[0].nrows
        if any(b.nrows != n for b in blocks):
            raise ValueError("row counts differ")
        return cls([sum((b.rows[i] for b in blocks), ()) for i in range(n)], sum(b.ncols for b in blocks))

    @classmethod
    def vstack(cls, blocks: Sequence[Matrix], ncols: int | None = None) -> Matrix:
        if not blocks:
            return cls.zeros(0, ncols or 0)
        c = blocks[0].ncols
        if any(b.ncols != c for b in blocks):
            raise ValueError("column counts differ")
        return cls([r for b in blocks for r in b.rows], c)

    # access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        if self.nrows == 0:
            return [()] * self.ncols
        return list(zip(*self.rows))

    @property
    def T(self) -> Matrix:
        return Matrix(self.columns(), self.nrows)

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> Matrix:
        rows = range(self.nrows) if rows is None else rows
        cols = range(self.ncols) if cols is None else list(cols)
        return Matrix([tuple(self.rows[i][j] for j in cols) for i in rows], len(cols))

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def is_integral(self) -> bool:
        return all(is_integral(x) for r in self.rows for x in r)

    def to_int(self) -> Matrix:
        return Matrix([tuple(as_int(x) for x in r) for r in self.rows], self.ncols)

    def to_rational(self) -> Matrix:
        return Matrix([tuple(mpq(x) for x in r) for r in self.rows], self.ncols)

    # arithmetic -------------------------------------------------------------

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(sum(a * c[k] for k, a in nz) if nz else 0 for c in cols))
        return Matrix(out, other.ncols)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        nz = [(k, x) for k, x in enumerate(vec) if x]
        return tuple(sum(r[k] * x for k, x in nz) if nz else 0 for r in self.rows)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> Matrix:
        return Matrix([tuple(-a for a in r) for r in self.rows], self.ncols)

    def scale(self, c) -> Matrix:
        return Matrix([tuple(c * a for a in r) for r in self.rows], self.ncols)

    # comparison ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        return f"Matrix({self.tolist()!r}, {self.ncols})"
