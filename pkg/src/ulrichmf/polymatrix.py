"""Square matrices of polynomials, stored as tuples of row tuples."""

from __future__ import annotations

from typing import Callable, Sequence

from .exactla import ExactMatrix
from .polyring import Poly, Ring

PolyMatrix = tuple[tuple[Poly, ...], ...]


def as_matrix(rows: Sequence[Sequence[Poly]]) -> PolyMatrix:
    out = tuple(tuple(r) for r in rows)
    if any(len(r) != len(out) for r in out):
        raise ValueError("matrix is not square")
    return out


def identity(n: int, ring: Ring, scale: Poly | None = None) -> PolyMatrix:
    diag = ring.one if scale is None else scale
    return tuple(tuple(diag if i == j else ring.zero for j in range(n)) for i in range(n))


def zeros(n: int, ring: Ring) -> PolyMatrix:
    return tuple((ring.zero,) * n for _ in range(n))


def matmul(a: PolyMatrix, b: PolyMatrix, ring: Ring) -> PolyMatrix:
    n = len(a)
    if a and len(b) != len(a[0]):
        raise ValueError("shape mismatch")
    cols = list(zip(*b))
    out = []
    for i in range(n):
        row = []
        for col in cols:
            acc = ring.zero
            for x, y in zip(a[i], col):
                if x and y:
                    acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def map_entries(a: PolyMatrix, fn: Callable[[Poly], Poly]) -> PolyMatrix:
    return tuple(tuple(fn(x) for x in row) for row in a)


def neg(a: PolyMatrix) -> PolyMatrix:
    return map_entries(a, lambda x: -x)


def transpose(a: PolyMatrix) -> PolyMatrix:
    return tuple(zip(*a))


def kron(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    na, nb = len(a), len(b)
    return tuple(
        tuple(a[i // nb][j // nb] * b[i % nb][j % nb] for j in range(na * nb))
        for i in range(na * nb)
    )


def blocks(tl: PolyMatrix, tr: PolyMatrix, bl: PolyMatrix, br: PolyMatrix) -> PolyMatrix:
    top = tuple(r1 + r2 for r1, r2 in zip(tl, tr))
    bottom = tuple(r1 + r2 for r1, r2 in zip(bl, br))
    return top + bottom


def scalar_matmul(s: ExactMatrix, a: PolyMatrix, ring: Ring) -> PolyMatrix:
    """``s @ a`` with ``s`` a scalar matrix."""
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = ring.zero
            for k in range(n):
                c = s[i, k]
                if c and a[k][j]:
                    acc = acc + a[k][j].scale(c)
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def det(a: PolyMatrix, ring: Ring) -> Poly:
    """Fraction-free Bareiss determinant; every division is exact."""
    n = len(a)
    if n == 0:
        return ring.one
    m = [list(r) for r in a]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return ring.zero
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            a_ik = m[i][k]
            for j in range(k + 1, n):
                num = pk * m[i][j]
                if a_ik and m[k][j]:
                    num = num - a_ik * m[k][j]
                m[i][j] = num.exact_div(prev) if num else num
            m[i][k] = ring.zero
        prev = pk
    result = m[n - 1][n - 1]
    return result if sign > 0 else -result


def minor(a: PolyMatrix, i: int, j: int) -> PolyMatrix:
    return tuple(tuple(x for c, x in enumerate(row) if c != j) for r, row in enumerate(a) if r != i)


def adjugate(a: PolyMatrix, ring: Ring) -> PolyMatrix:
    n = len(a)
    if n == 1:
        return ((ring.one,),)
    cof = [[det(minor(a, i, j), ring) for j in range(n)] for i in range(n)]
    return tuple(
        tuple(cof[i][j] if (i + j) % 2 == 0 else -cof[i][j] for i in range(n))
        for j in range(n)
    )


def evaluate(a: PolyMatrix, point: Sequence, ring: Ring) -> ExactMatrix:
    return ExactMatrix.from_rows([[x.evaluate(point) for x in row] for row in a], ring.field)


def to_strings(a: PolyMatrix) -> list[list[str]]:
    return [[x.to_str() for x in row] for row in a]


def from_strings(rows: Sequence[Sequence[str]], ring: Ring) -> PolyMatrix:
    return as_matrix([[ring.parse(s) for s in row] for row in rows])


def first_difference(a: PolyMatrix, b: PolyMatrix) -> tuple[int, int, Poly] | None:
    """First ``(i, j, a_ij - b_ij)`` with a nonzero residual, else ``None``."""
    for i, (ra, rb) in enumerate(zip(a, b)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            if x != y:
                return i, j, x - y
    return None
