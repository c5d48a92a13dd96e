"""Independent reference implementations used only by the tests.

Each one is deliberately naive (cofactor expansion, dict-of-Fraction
multiplication, sympy ranks) so that it shares no code path with the
library it checks.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, prod
from typing import Sequence

import sympy
from sympy.polys.domains import GF, QQ as SYM_QQ
from sympy.polys.matrices import DomainMatrix


def det_cofactor(rows: Sequence[Sequence], reduce=lambda x: x):
    """Laplace expansion along the first row; works for scalars or Poly entries."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        a = rows[0][j]
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * det_cofactor(minor, reduce)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] * 0
    return reduce(total)


def multinomial(exps: Sequence[int]) -> int:
    return factorial(sum(exps)) // prod(factorial(e) for e in exps)


def weighted_space_dim(n: int, m: int, degree: int, with_t: bool = True) -> int:
    """Number of monomials of weighted degree ``degree`` in x0..xn (weight 1) and t (weight m)."""
    if degree < 0:
        return 0
    if not with_t:
        return comb(degree + n, n)
    return sum(comb(degree - j * m + n, n) for j in range(degree // m + 1))


def naive_mul(a: dict, b: dict) -> dict:
    """Multiply term dicts ``{exponent tuple: Fraction}``."""
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mon = tuple(x + y for x, y in zip(ma, mb))
            out[mon] = out.get(mon, Fraction(0)) + Fraction(ca) * Fraction(cb)
    return {k: v for k, v in out.items() if v}


def sympy_rank(rows: Sequence[Sequence], p: int = 0) -> int:
    if not rows:
        return 0
    if p:
        dom = GF(p)
        data = [[dom(int(x)) for x in r] for r in rows]
    else:
        dom = SYM_QQ
        data = [[dom(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows]
    return DomainMatrix(data, (len(rows), len(rows[0])), dom).rank()


def sympy_expand(text: str) -> sympy.Expr:
    return sympy.expand(sympy.sympify(text.replace("^", "**")))
