"""Exact integer linear algebra: gcds, Smith normal form with transforms,
kernels and cokernel invariant factors.

All arithmetic uses Python's arbitrary-precision integers; intermediate
entries in a Smith reduction can blow up well past 64 bits.

Invariant factors are stored in ascending divisibility order d_1 | d_2 | ...
(some sources index the other way round).  The gcd of an empty or all-zero
collection is 0 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


class ShapeError(ValueError):
    """Matrix shape does not fit the requested operation."""


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 0:
            raise ShapeError(f"bad shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        r = len(rows)
        c = len(rows[0]) if rows and len(rows[0:1]) else 0
        c = len(rows[0]) if r else 0
        for row in rows:
            if len(row) != c:
                raise ShapeError("ragged rows")
        return cls(r, c, tuple(int(x) for row in rows for x in row))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        if not cols:
            if rows is None:
                raise ShapeError("need explicit row count for an empty column list")
            return cls(rows, 0, ())
        r = len(cols[0])
        return cls.from_rows([[col[i] for col in cols] for i in range(r)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeError("inner dimensions differ")
        a, b = self.to_lists(), other.to_lists()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols))
                for j in range(other.cols)] for i in range(self.rows)]
        return IntMatrix.from_rows(out)

    def matvec(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ShapeError("vector length differs from column count")
        return tuple(sum(self[i, k] * v[k] for k in range(self.cols)) for i in range(self.rows))


@dataclass(frozen=True)
class SmithForm:
    """U @ M @ V = diag(invariants), U and V unimodular, d_1 | d_2 | ..."""

    invariants: tuple[int, ...]
    U: IntMatrix
    V: IntMatrix


def gcd_vec(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return g


def is_primitive(v: Iterable[int]) -> bool:
    return gcd_vec(v) == 1


def span_min_gcd(m: IntMatrix) -> int:
    """Minimum of gcd(w) over nonzero integer combinations w of the columns.

    Equals the gcd of all entries: every combination is divisible by it, and
    it is attained by some combination (test suite checks this by brute force).
    """
    return gcd_vec(m.entries)


def det(m: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ShapeError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _swap_rows(a, t, i, j):
    a[i], a[j] = a[j], a[i]
    t[i], t[j] = t[j], t[i]


def _addmul_row(a, t, i, j, q):
    # row i += q * row j
    ai, aj = a[i], a[j]
    for k in range(len(ai)):
        ai[k] += q * aj[k]
    ti, tj = t[i], t[j]
    for k in range(len(ti)):
        ti[k] += q * tj[k]


def _negate_row(a, t, i):
    a[i] = [-x for x in a[i]]
    t[i] = [-x for x in t[i]]


def snf(m: IntMatrix) -> SmithForm:
    """Smith normal form with unimodular transforms.

    Pivoting picks the smallest nonzero absolute value in the remaining block,
    which keeps growth moderate and makes the output deterministic.
    """
    a = m.to_lists()
    rows, cols = m.rows, m.cols
    u = IntMatrix.identity(rows).to_lists()
    # work with V^T so column operations on `a` are row operations on `vt`
    vt = IntMatrix.identity(cols).to_lists() if cols else []
    at = [[a[i][j] for i in range(rows)] for j in range(cols)]  # transpose view

    def sync_from_at():
        for i in range(rows):
            for j in range(cols):
                a[i][j] = at[j][i]

    def sync_to_at():
        for j in range(cols):
            for i in range(rows):
                at[j][i] = a[i][j]

    n = min(rows, cols)
    for k in range(n):
        while True:
            # locate smallest nonzero pivot in block [k:, k:]
            piv = None
            best = None
            for i in range(k, rows):
                for j in range(k, cols):
                    x = a[i][j]
                    if x != 0 and (best is None or abs(x) < best):
                        best = abs(x)
                        piv = (i, j)
            if piv is None:
                break
            pi, pj = piv
            if pi != k:
                _swap_rows(a, u, k, pi)
            if pj != k:
                sync_to_at()
                _swap_rows(at, vt, k, pj)
                sync_from_at()
            done = True
            for i in range(k + 1, rows):
                if a[i][k] != 0:
                    q = -(a[i][k] // a[k][k])
                    _addmul_row(a, u, i, k, q)
                    if a[i][k] != 0:
                        done = False
            sync_to_at()
            for j in range(k + 1, cols):
                if at[j][k] != 0:
                    q = -(at[j][k] // at[k][k])
                    _addmul_row(at, vt, j, k, q)
                    if at[j][k] != 0:
                        done = False
            sync_from_at()
            if done:
                break
        if a[k][k] < 0:
            _negate_row(a, u, k)

    # enforce the divisibility chain d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for k in range(n - 1):
            di, dj = a[k][k], a[k + 1][k + 1]
            if dj != 0 and (di == 0 or dj % di != 0):
                # mix the two diagonal positions and re-reduce the 2x2 block
                _addmul_row(a, u, k, k + 1, 1)  # puts dj at (k, k+1)
                sync_to_at()
                g = math.gcd(di, dj)
                # column ops: clear (k, k+1) using the gcd
                while at[k + 1][k] != 0:
                    if at[k][k] != 0 and abs(at[k][k]) <= abs(at[k + 1][k]):
                        q = -(at[k + 1][k] // at[k][k])
                        _addmul_row(at, vt, k + 1, k, q)
                    else:
                        _swap_rows(at, vt, k, k + 1)
                sync_from_at()
                # row op to clear (k+1, k)
                while a[k + 1][k] != 0:
                    if a[k][k] != 0 and abs(a[k][k]) <= abs(a[k + 1][k]):
                        q = -(a[k + 1][k] // a[k][k])
                        _addmul_row(a, u, k + 1, k, q)
                    else:
                        _swap_rows(a, u, k, k + 1)
                if a[k][k] < 0:
                    _negate_row(a, u, k)
                if a[k + 1][k + 1] < 0:
                    _negate_row(a, u, k + 1)
                assert abs(a[k][k]) == g
                changed = True
        # move zero invariants to the end
        for k in range(n - 1):
            if a[k][k] == 0 and a[k + 1][k + 1] != 0:
                _swap_rows(a, u, k, k + 1)
                sync_to_at()
                _swap_rows(at, vt, k, k + 1)
                sync_from_at()
                changed = True

    invariants = tuple(a[k][k] for k in range(n))
    umat = IntMatrix.from_rows(u)
    vmat = IntMatrix.from_rows([[vt[j][i] for j in range(cols)] for i in range(cols)]) \
        if cols else IntMatrix(1, 0, ())
    if cols == 0:
        vmat = IntMatrix.identity(1)  # placeholder; no columns to transform
    return SmithForm(invariants, umat, vmat)


def cokernel_invariants(m: IntMatrix) -> tuple[int, ...]:
    """Invariant factors of Z^rows / (column span), padded with 0 per free
    dimension so the result always has length `rows`."""
    if m.cols == 0:
        return (0,) * m.rows
    inv = list(snf(m).invariants)
    inv += [0] * (m.rows - len(inv))
    return tuple(inv[:m.rows])


def rank_and_dim(invariants: Sequence[int]) -> tuple[int, int]:
    """(rank, dim) of the abelian group with these invariant factors: rank
    counts factors != 1, dim counts the free (zero) factors."""
    rank = sum(1 for d in invariants if d != 1)
    dim = sum(1 for d in invariants if d == 0)
    return rank, dim


def kernel_matrix(m: IntMatrix) -> IntMatrix:
    """Columns form a basis of the integer kernel {x : Mx = 0}.

    Taken from the Smith transform: with UMV = D, column j of V is in the
    kernel exactly when the corresponding diagonal entry vanishes.
    """
    if m.cols == 0:
        return IntMatrix(m.cols if m.cols else 1, 0, ())
    sf = snf(m)
    free = [j for j in range(m.cols)
            if j >= len(sf.invariants) or sf.invariants[j] == 0]
    cols = [sf.V.column(j) for j in free]
    if not cols:
        return IntMatrix(m.cols, 0, ())
    return IntMatrix.from_columns(cols)
