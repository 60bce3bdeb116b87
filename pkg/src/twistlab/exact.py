"""Exact integer and GF(2) linear algebra.

Everything here is plain Python integers (arbitrary precision) or 0/1 bits;
no floating point is used anywhere.  Smith normal form uses the
smallest-absolute-value pivot with a deterministic (row, column) tie-break so
transforms are reproducible across runs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatch


class IntMatrix:
    """Immutable integer matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise DimensionMismatch("ragged rows")
        else:
            width = 0
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix([[0] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int):
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]})"

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.cols} != {other.rows}")
        b_cols = list(zip(*other.entries)) if other.entries else []
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in b_cols] for row in self.entries]
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch")
        return IntMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in row] for row in self.entries])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.entries)) if self.entries else [])

    def apply(self, vector: Sequence[int]) -> tuple:
        if len(vector) != self.cols:
            raise DimensionMismatch("vector length")
        return tuple(sum(a * x for a, x in zip(row, vector)) for row in self.entries)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == IntMatrix.identity(self.rows)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise DimensionMismatch("square matrix required")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if piv is None:
                    return 0
                m[k], m[piv] = m[piv], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """U * A * V = diag(diagonal), with U, V unimodular."""

    diagonal: tuple
    rank: int
    left: IntMatrix
    right: IntMatrix

    def reconstruct(self, shape) -> IntMatrix:
        rows, cols = shape
        m = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(self.diagonal):
            m[i][i] = d
        return IntMatrix(m)


def _pivot(m, k, rows, cols):
    """Smallest |entry| in m[k:, k:], ties by (row, col)."""
    best = None
    for i in range(k, rows):
        for j in range(k, cols):
            v = abs(m[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return best


def smith_normal_form(a: IntMatrix) -> SmithForm:
    rows, cols = a.rows, a.cols
    m = [list(r) for r in a.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        m[i] = [x - q * y for x, y in zip(m[i], m[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in m:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def clear_position(k: int):
        """Bring the smallest-|entry| pivot to (k, k) and clear its row and
        column; re-select the pivot after every pass (remainders are strictly
        smaller, so the selection terminates)."""
        while True:
            piv = _pivot(m, k, rows, cols)
            if piv is None:
                return False
            _, pi, pj = piv
            if pi != k:
                swap_rows(k, pi)
            if pj != k:
                swap_cols(k, pj)
            if m[k][k] < 0:
                m[k] = [-x for x in m[k]]
                u[k] = [-x for x in u[k]]
            clean = True
            for i in range(k + 1, rows):
                if m[i][k]:
                    row_op(i, k, m[i][k] // m[k][k])
                    if m[i][k]:
                        clean = False
            for j in range(k + 1, cols):
                if m[k][j]:
                    col_op(j, k, m[k][j] // m[k][k])
                    if m[k][j]:
                        clean = False
            if clean:
                return True

    k = 0
    while k < min(rows, cols) and clear_position(k):
        k += 1

    # enforce divisibility chain d_i | d_{i+1}: fold the offender next to its
    # predecessor and re-diagonalize the tail (the fold can smear later rows)
    rank = sum(1 for i in range(min(rows, cols)) if m[i][i] != 0)
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            d1, d2 = m[i][i], m[i + 1][i + 1]
            if d2 % d1 != 0:
                col_op(i, i + 1, -1)
                kk = i
                while kk < min(rows, cols) and clear_position(kk):
                    kk += 1
                changed = True
    diagonal = tuple(m[i][i] for i in range(min(rows, cols)) if m[i][i] != 0)
    return SmithForm(diagonal=diagonal, rank=len(diagonal), left=IntMatrix(u), right=IntMatrix(v))


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix, exactly."""
    if m.rows != m.cols:
        raise DimensionMismatch("square matrix required")
    n = m.rows
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(m.entries)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise DimensionMismatch("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    out = [[x for x in row[n:]] for row in aug]
    if any(x.denominator != 1 for row in out for x in row):
        raise DimensionMismatch("matrix is not unimodular")
    return IntMatrix([[int(x) for x in row] for row in out])


def rank_over_rationals(a: IntMatrix) -> int:
    """Rank over Q by Gaussian elimination with exact fractions.

    Independent of the Smith-form route; the two are cross-checked in tests.
    """
    m = [[Fraction(x) for x in row] for row in a.entries]
    rank = 0
    for col in range(a.cols):
        piv = next((i for i in range(rank, a.rows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(a.rows):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == a.rows:
            break
    return rank


# ---------------------------------------------------------------------------
# GF(2)

class F2Matrix:
    """Dense matrix over the two-element field, entries 0/1."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) & 1 for x in row) for row in entries)
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, name, value):
        raise AttributeError("F2Matrix is immutable")

    def __eq__(self, other):
        return isinstance(other, F2Matrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"F2Matrix({[list(r) for r in self.entries]})"

    def apply(self, vector: Sequence[int]) -> tuple:
        if len(vector) != self.cols:
            raise DimensionMismatch("vector length")
        return tuple(sum(a * x for a, x in zip(row, vector)) & 1 for row in self.entries)


def solve_f2(a: F2Matrix, b: Sequence[int]) -> Optional[tuple]:
    """One solution of A x = b over GF(2), or None when the system is
    inconsistent (infeasibility is a normal outcome, not an error).

    Free variables are set to 0.
    """
    if len(b) != a.rows:
        raise DimensionMismatch("rhs length")
    m = [list(row) + [int(bi) & 1] for row, bi in zip(a.entries, b)]
    n = a.cols
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, a.rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(a.rows):
            if i != r and m[i][c]:
                m[i] = [(x ^ y) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, a.rows):
        if m[i][n]:
            return None
    x = [0] * n
    for i, c in enumerate(pivots):
        x[c] = m[i][n]
    return tuple(x)
