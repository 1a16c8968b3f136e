"""Exact linear algebra: GF(2) bitset matrices and rational systems."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence


@dataclass(frozen=True)
class F2Matrix:
    """``rows[j]`` holds row ``j`` as a bitmask; bit ``i`` is column ``i``."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> "F2Matrix":
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = tuple(sum((int(x) & 1) << i for i, x in enumerate(r)) for r in entries)
        return cls(len(rows), ncols, rows)

    def entry(self, j: int, i: int) -> int:
        return (self.rows[j] >> i) & 1

    def to_lists(self) -> list[list[int]]:
        return [[self.entry(j, i) for i in range(self.ncols)] for j in range(self.nrows)]

    def apply(self, x: int) -> int:
        """``P x`` for a column bitvector ``x``; result bit ``j`` is row ``j``."""
        out = 0
        for j, r in enumerate(self.rows):
            out |= ((r & x).bit_count() & 1) << j
        return out

    def rank(self) -> int:
        return len(_echelon(list(self.rows), self.ncols)[0])

    def nullspace(self) -> list[int]:
        """Basis of ``{x : P x = 0}`` as column bitvectors, in reduced form."""
        pivots, reduced = _echelon(list(self.rows), self.ncols)
        pivot_cols = {c for c, _ in pivots}
        basis = []
        for free in range(self.ncols):
            if free in pivot_cols:
                continue
            x = 1 << free
            for c, row in pivots:
                if (row >> free) & 1:
                    x |= 1 << c
            basis.append(x)
        return basis

    def solve(self, rhs: int) -> int | None:
        """Some ``x`` with ``P x = rhs`` (free variables zero), or ``None``."""
        aug = [r | (((rhs >> j) & 1) << self.ncols) for j, r in enumerate(self.rows)]
        pivots, reduced = _echelon(aug, self.ncols)
        for r in reduced:
            if r and r & ((1 << self.ncols) - 1) == 0:
                return None
        x = 0
        for c, row in pivots:
            if (row >> self.ncols) & 1:
                x |= 1 << c
        return x


def _echelon(rows: list[int], ncols: int) -> tuple[list[tuple[int, int]], list[int]]:
    """Reduced row echelon form over GF(2); returns ``(pivot column, row)`` pairs and all rows."""
    rows = list(rows)
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(ncols):
        sel = next((k for k in range(r, len(rows)) if (rows[k] >> col) & 1), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for k in range(len(rows)):
            if k != r and (rows[k] >> col) & 1:
                rows[k] ^= rows[r]
        r += 1
    for k in range(r):
        col = (rows[k] & -rows[k]).bit_length() - 1
        pivots.append((col, rows[k]))
    return pivots, rows


def gf2_solve(equations: Sequence[int], rhs: Sequence[int], nvars: int) -> int | None:
    """Solve a GF(2) system given as bitmask rows; convenience over :class:`F2Matrix`."""
    m = F2Matrix(len(equations), nvars, tuple(equations))
    target = sum((b & 1) << j for j, b in enumerate(rhs))
    return m.solve(target)


def solve_rational(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction] | None:
    """Exact solution of ``a x = b`` with free variables set to zero, or ``None``.

    Elimination keeps integer rows (each row is divided by the gcd of its entries
    after every update); fractions appear only in the final back substitution.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    rows = [[int(v) for v in a[j]] + [int(b[j])] for j in range(nrows)]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        sel = next((k for k in range(r, nrows) if rows[k][col] != 0), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        p = rows[r][col]
        for k in range(nrows):
            if k == r or rows[k][col] == 0:
                continue
            q = rows[k][col]
            new = [p * x - q * y for x, y in zip(rows[k], rows[r])]
            g = 0
            for x in new:
                g = gcd(g, x)
            rows[k] = [x // g for x in new] if g > 1 else new
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    for k in range(r, nrows):
        if rows[k][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for k, col in enumerate(pivots):
        x[col] = Fraction(rows[k][ncols], rows[k][col])
    return x
