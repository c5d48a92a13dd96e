"""Exact dense linear algebra over Q and F_p.

Over Q, rank and determinant use Bareiss fraction-free elimination on an
integer copy of the matrix (each row scaled by the lcm of its denominators).
Over F_p they use ordinary elimination, vectorised with numpy when ``p**2``
fits in an int64.  Pivots are chosen as the first nonzero entry in column
order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .field import FieldSpec, Scalar

_NUMPY_PRIME_LIMIT = 3_037_000_499  # floor(sqrt(2**63 - 1))


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple
    field: FieldSpec

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], field: FieldSpec, cols: int | None = None) -> ExactMatrix:
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        entries = tuple(field(x) for r in rows for x in r)
        return cls(len(rows), ncols, entries, field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> ExactMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec) -> ExactMatrix:
        return cls(rows, cols, (field.zero,) * (rows * cols), field)

    def row(self, i: int) -> list[Scalar]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list[Scalar]]:
        return [self.row(i) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.entries[i * self.cols + j]

    def transpose(self) -> ExactMatrix:
        cols = [[self[i, j] for i in range(self.rows)] for j in range(self.cols)]
        return ExactMatrix.from_rows(cols, self.field, cols=self.rows)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        f = self.field
        a, b = self.to_rows(), other.to_rows()
        bt = list(zip(*b)) if b else [()] * other.cols
        out = [[f.reduce(sum(x * y for x, y in zip(r, c))) for c in bt] for r in a]
        return ExactMatrix.from_rows(out, f, cols=other.cols)

    def apply(self, vec: Sequence[Scalar]) -> list[Scalar]:
        if len(vec) != self.cols:
            raise ValueError("vector length must equal cols")
        f = self.field
        return [f.reduce(sum(x * y for x, y in zip(self.row(i), vec))) for i in range(self.rows)]


# rank

def _integer_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        r = [Fraction(x) for x in r]
        den = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * den) for x in r])
    return out


def _bareiss_rank(rows: list[list[int]], ncols: int) -> int:
    m = [r for r in rows if any(r)]
    prev = 1
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        pc = pr[c]
        for i in range(rank + 1, len(m)):
            row = m[i]
            a = row[c]
            if a:
                m[i] = [(pc * x - a * y) // prev for x, y in zip(row, pr)]
            elif pc != prev:
                m[i] = [(pc * x) // prev for x in row]
        prev = pc
        rank += 1
        if rank == len(m):
            break
    return rank


def _modp_rank_numpy(rows: list[list[int]], ncols: int, p: int) -> int:
    if not rows or not ncols:
        return 0
    a = np.array(rows, dtype=np.int64) % p
    nrows = a.shape[0]
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        nz = np.flatnonzero(a[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        a[rank] = (a[rank] * inv) % p
        below = a[rank + 1:, c]
        hit = np.flatnonzero(below)
        if hit.size:
            idx = rank + 1 + hit
            a[idx] = (a[idx] - np.outer(a[idx, c], a[rank])) % p
        rank += 1
    return rank


def _modp_rank_python(rows: list[list[int]], ncols: int, p: int) -> int:
    m = [[x % p for x in r] for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        pr = [(x * inv) % p for x in m[rank]]
        m[rank] = pr
        for i in range(rank + 1, len(m)):
            a = m[i][c]
            if a:
                m[i] = [(x - a * y) % p for x, y in zip(m[i], pr)]
        rank += 1
    return rank


def rank_of_rows(rows: Sequence[Sequence[Scalar]], ncols: int, field: FieldSpec) -> int:
    """Rank of a matrix given as a list of rows (avoids building an ExactMatrix)."""
    if field.is_prime_field:
        p = field.characteristic
        ints = [[int(x) for x in r] for r in rows]
        if p <= _NUMPY_PRIME_LIMIT:
            return _modp_rank_numpy(ints, ncols, p)
        return _modp_rank_python(ints, ncols, p)
    return _bareiss_rank(_integer_rows(rows), ncols)


def rank(mat: ExactMatrix) -> int:
    return rank_of_rows(mat.to_rows(), mat.cols, mat.field)


# determinant

def det_scalar(mat: ExactMatrix) -> Scalar:
    if mat.rows != mat.cols:
        raise ValueError(f"determinant of a non-square {mat.rows}x{mat.cols} matrix")
    n = mat.rows
    f = mat.field
    if n == 0:
        return f.one
    if f.is_prime_field:
        return _det_modp(mat.to_rows(), f.characteristic)
    rows = [[Fraction(x) for x in r] for r in mat.to_rows()]
    dens = [lcm(*(x.denominator for x in r)) for r in rows]
    m = [[int(x * d) for x in r] for r, d in zip(rows, dens)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            mi = m[i]
            a = mi[k]
            m[i] = mi[:k + 1] + [(pk * mi[j] - a * m[k][j]) // prev for j in range(k + 1, n)]
        prev = pk
    scale = 1
    for d in dens:
        scale *= d
    return Fraction(sign * m[n - 1][n - 1], scale)


def _det_modp(rows: list[list[int]], p: int) -> int:
    m = [[int(x) % p for x in r] for r in rows]
    n = len(m)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        pk = m[k][k]
        det = det * pk % p
        inv = pow(pk, -1, p)
        for i in range(k + 1, n):
            a = m[i][k] * inv % p
            if a:
                m[i] = [(x - a * y) % p for x, y in zip(m[i], m[k])]
    return det % p


# solve and kernel

def _rref(rows: list[list[Scalar]], ncols: int, field: FieldSpec) -> tuple[list[list[Scalar]], list[int]]:
    m = [list(r) for r in rows]
    red = field.reduce
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [red(x * inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                a = m[i][c]
                m[i] = [red(x - a * y) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve(mat: ExactMatrix, rhs: Sequence[Scalar]) -> list[Scalar] | None:
    """One exact solution of ``mat @ x == rhs``, or ``None`` when inconsistent."""
    if len(rhs) != mat.rows:
        raise ValueError("rhs length must equal the number of rows")
    f = mat.field
    aug = [r + [f(b)] for r, b in zip(mat.to_rows(), rhs)]
    red, pivots = _rref(aug, mat.cols + 1, f)
    if mat.cols in pivots:
        return None
    x = [f.zero] * mat.cols
    for i, c in enumerate(pivots):
        x[c] = red[i][mat.cols]
    return x


def kernel(mat: ExactMatrix) -> list[list[Scalar]]:
    """Basis of the right null space."""
    f = mat.field
    red, pivots = _rref(mat.to_rows(), mat.cols, f)
    free = [c for c in range(mat.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [f.zero] * mat.cols
        v[fc] = f.one
        for i, pc in enumerate(pivots):
            v[pc] = f.reduce(-red[i][fc])
        basis.append(v)
    return basis

