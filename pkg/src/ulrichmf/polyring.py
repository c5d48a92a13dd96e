"""Sparse weighted-homogeneous polynomials in ``x0..xn`` and ``t``.

The grading gives every ``xi`` weight 1 and ``t`` weight ``m``; equations of
degree ``d`` coverings are then forms of weighted degree ``d*m``.  A monomial
is an exponent tuple of length ``n + 2`` whose last slot is the ``t``
exponent.
"""

from __future__ import annotations

import heapq
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, lcm
from typing import Iterable, Iterator, Mapping, Union

from .field import FieldError, FieldSpec, Scalar

Monomial = tuple[int, ...]


class RingMismatch(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class DegreeError(ValueError):
    pass


class _EveryDegree:
    """Weighted degree of the zero polynomial: homogeneous of every degree."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EVERY_DEGREE"


EVERY_DEGREE = _EveryDegree()


@dataclass(frozen=True)
class Ring:
    """Ambient ring ``k[x0..xn, t]`` with ``deg t = m``."""

    n: int
    m: int
    field: FieldSpec

    def __post_init__(self) -> None:
        if self.n < 0 or self.m < 1:
            raise ValueError("need n >= 0 and m >= 1")

    @property
    def nvars(self) -> int:
        return self.n + 2

    def var(self, i: int) -> Poly:
        if not 0 <= i <= self.n:
            raise ValueError(f"x{i} is not a variable of this ring")
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    @property
    def t(self) -> Poly:
        e = [0] * self.nvars
        e[-1] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self) -> list[Poly]:
        return [self.var(i) for i in range(self.n + 1)]

    def const(self, c: Scalar | str) -> Poly:
        value = self.field(c)
        if not value:
            return self.zero
        return Poly(self, {(0,) * self.nvars: value})

    @property
    def zero(self) -> Poly:
        return Poly(self, {})

    @property
    def one(self) -> Poly:
        return self.const(1)

    def monomial(self, exps: Iterable[int], t_exp: int = 0) -> Poly:
        exps = tuple(exps)
        if len(exps) != self.n + 1:
            raise ValueError("wrong number of exponents")
        return Poly(self, {exps + (t_exp,): self.field.one})

    def weight(self, mon: Monomial) -> int:
        return sum(mon[:-1]) + self.m * mon[-1]

    def monomials(self, degree: int, with_t: bool = True) -> list[Monomial]:
        """All monomials of weighted degree ``degree``, in descending grevlex."""
        return list(_monomials(self.n, self.m, degree, with_t))

    def space_dim(self, degree: int, with_t: bool = True) -> int:
        if degree < 0:
            return 0
        if not with_t:
            return comb(degree + self.n, self.n)
        return sum(comb(degree - j * self.m + self.n, self.n) for j in range(degree // self.m + 1))

    def parse(self, text: str) -> Poly:
        return parse_poly(text, self)

    def with_field(self, field: FieldSpec) -> Ring:
        return Ring(self.n, self.m, field)


def grevlex_key(mon: Monomial, m: int) -> tuple:
    """Sort key, larger is bigger: weighted degree, then reverse lex with ``t`` last."""
    return (sum(mon[:-1]) + m * mon[-1], tuple(-e for e in reversed(mon)))


def _neg_key(mon: Monomial, m: int) -> tuple:
    return (-(sum(mon[:-1]) + m * mon[-1]), mon[::-1])


@lru_cache(maxsize=None)
def _monomials(n: int, m: int, degree: int, with_t: bool) -> tuple[Monomial, ...]:
    if degree < 0:
        return ()
    out = []
    top_t = degree // m if with_t else 0
    for j in range(top_t + 1):
        rest = degree - j * m
        for combo in combinations_with_replacement(range(n + 1), rest):
            e = [0] * (n + 2)
            for i in combo:
                e[i] += 1
            e[-1] = j
            out.append(tuple(e))
    out.sort(key=lambda mon: grevlex_key(mon, m), reverse=True)
    return tuple(out)


_PACK_BITS = 20


def _pack(mon: Monomial) -> int:
    key = 0
    for e in reversed(mon):
        key = (key << _PACK_BITS) | e
    return key


def _unpack(key: int, nvars: int) -> Monomial:
    mask = (1 << _PACK_BITS) - 1
    out = []
    for _ in range(nvars):
        out.append(key & mask)
        key >>= _PACK_BITS
    return tuple(out)


def _convolve(a: Mapping[Monomial, int], b: Mapping[Monomial, int]) -> dict[Monomial, int]:
    """Product of two term dicts; exponents are packed into ints while summing."""
    nvars = len(next(iter(a)))
    pb = [(_pack(mb), cb) for mb, cb in b.items()]
    acc: dict[int, int] = {}
    get = acc.get
    for ma, ca in a.items():
        ka = _pack(ma)
        for kb, cb in pb:
            k = ka + kb
            acc[k] = get(k, 0) + ca * cb
    return {_unpack(k, nvars): v for k, v in acc.items()}


def _integer_terms(terms: Mapping[Monomial, Fraction]) -> tuple[int, dict[Monomial, int]]:
    den = lcm(*(c.denominator for c in terms.values()))
    if den == 1:
        return 1, {mon: c.numerator for mon, c in terms.items()}
    return den, {mon: c.numerator * (den // c.denominator) for mon, c in terms.items()}


class _NotIntegral(Exception):
    pass


def _long_divide(
    num: Mapping[Monomial, Scalar],
    den: Mapping[Monomial, Scalar],
    lm: Monomial,
    lc: Scalar,
    m: int,
    lc_inv: Scalar | None,
    red,
) -> dict[Monomial, Scalar]:
    """Division by leading terms in grevlex order.

    With ``lc_inv is None`` the coefficients are integers and every quotient
    coefficient must divide exactly (else :class:`_NotIntegral`); otherwise
    they live in a field with reduction ``red``.
    """
    rem = dict(num)
    quot: dict[Monomial, Scalar] = {}
    # max-heap on the grevlex key; stale entries are skipped lazily
    heap = [(_neg_key(mon, m), mon) for mon in rem]
    heapq.heapify(heap)
    others = [(om, oc) for om, oc in den.items() if om != lm]
    while heap:
        _, mon = heapq.heappop(heap)
        if mon not in rem:
            continue
        diff = tuple(x - y for x, y in zip(mon, lm))
        if min(diff) < 0:
            raise ArithmeticError("division is not exact")
        a = rem.pop(mon)
        if lc_inv is None:
            c, r = divmod(a, lc)
            if r:
                raise _NotIntegral
        else:
            c = red(a * lc_inv)
        quot[diff] = c
        for om, oc in others:
            pm = tuple(x + y for x, y in zip(diff, om))
            old = rem.get(pm)
            v = (old or 0) - c * oc
            if red is not None:
                v = red(v)
            if v:
                if old is None:
                    heapq.heappush(heap, (_neg_key(pm, m), pm))
                rem[pm] = v
            elif old is not None:
                del rem[pm]
    return quot


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Immutable sparse polynomial.  ``terms`` maps monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Scalar] | None = None):
        self.ring = ring
        if terms is None:
            clean = {}
        else:
            red = ring.field.reduce
            clean = {}
            for mon, c in terms.items():
                c = red(c)
                if c:
                    clean[mon] = c
        self.terms: dict[Monomial, Scalar] = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict[Monomial, Scalar]) -> Poly:
        # caller guarantees reduced, nonzero coefficients
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, mon: Monomial) -> Scalar:
        return self.terms.get(tuple(mon), self.ring.field.zero)

    def is_constant(self) -> bool:
        return all(not any(mon) for mon in self.terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def t_degree(self) -> int:
        return max((mon[-1] for mon in self.terms), default=0)

    def is_t_free(self) -> bool:
        return all(mon[-1] == 0 for mon in self.terms)

    def weighted_degree(self) -> int | _EveryDegree | None:
        """Common weighted degree, ``None`` if inhomogeneous, ``EVERY_DEGREE`` for zero."""
        if not self.terms:
            return EVERY_DEGREE
        w = self.ring.weight
        degs = {w(mon) for mon in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, degree: int | None = None) -> bool:
        d = self.weighted_degree()
        if d is None:
            return False
        if d is EVERY_DEGREE or degree is None:
            return True
        return d == degree

    def t_coefficients(self) -> dict[int, Poly]:
        """Split as ``sum_j t^j * c_j`` with ``c_j`` t-free."""
        parts: dict[int, dict[Monomial, Scalar]] = {}
        for mon, c in self.terms.items():
            parts.setdefault(mon[-1], {})[mon[:-1] + (0,)] = c
        return {j: Poly._raw(self.ring, terms) for j, terms in parts.items()}

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        m = self.ring.m
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0], m), reverse=True)

    def leading_term(self) -> tuple[Monomial, Scalar]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = self.ring.m
        mon = max(self.terms, key=lambda mon: grevlex_key(mon, m))
        return mon, self.terms[mon]

    # arithmetic

    def _check(self, other: Poly) -> None:
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        red = self.ring.field.reduce
        terms = dict(self.terms)
        for mon, c in other.terms.items():
            v = red(terms.get(mon, 0) + c)
            if v:
                terms[mon] = v
            else:
                terms.pop(mon, None)
        return Poly._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        red = self.ring.field.reduce
        return Poly._raw(self.ring, {mon: red(-c) for mon, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: Scalar) -> Poly:
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero
        red = f.reduce
        return Poly._raw(self.ring, {mon: red(v * c) for mon, v in self.terms.items()})

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        if not self.terms or not other.terms:
            return self.ring.zero
        if self.ring.field.is_prime_field:
            acc = _convolve(self.terms, other.terms)
            return Poly(self.ring, acc)
        # over Q: multiply integer numerators, divide by the denominators once
        da, ta = _integer_terms(self.terms)
        db, tb = _integer_terms(other.terms)
        acc = _convolve(ta, tb)
        den = da * db
        if den == 1:
            out = {mon: Fraction(v) for mon, v in acc.items() if v}
        else:
            out = {mon: Fraction(v, den) for mon, v in acc.items() if v}
        return Poly._raw(self.ring, out)

    def __rmul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> Poly:
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.is_constant() and other:
                return self.scale(self.ring.field.inv(other.constant_value()))
            return self.exact_div(other)
        if isinstance(other, (int, Fraction)):
            f = self.ring.field
            return self.scale(f.inv(f(other)))
        return NotImplemented

    def exact_div(self, other: Poly) -> Poly:
        """Quotient ``self / other``; raises if ``other`` does not divide exactly."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        f = self.ring.field
        m = self.ring.m
        lm, lc = other.leading_term()
        if not f.is_prime_field:
            # try integer-only division first; the quotient is usually integral
            dn, tn = _integer_terms(self.terms)
            dd, td = _integer_terms(other.terms)
            try:
                q = _long_divide(tn, td, lm, td[lm], m, None, None)
            except _NotIntegral:
                pass
            else:
                scale = Fraction(dd, dn)
                return Poly._raw(self.ring, {mon: v * scale for mon, v in q.items()})
        return Poly._raw(self.ring, _long_divide(self.terms, other.terms, lm, lc, m, f.inv(lc), f.reduce))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # substitution and evaluation

    def substitute_t(self, value: Poly | str) -> Poly:
        """Replace ``t`` by a form of weighted degree ``m``, or by ``-t`` when ``value == "neg"``."""
        if isinstance(value, str):
            if value not in ("neg", "-t"):
                raise ValueError(f"unknown substitution {value!r}")
            red = self.ring.field.reduce
            return Poly._raw(
                self.ring,
                {mon: (red(-c) if mon[-1] % 2 else c) for mon, c in self.terms.items()},
            )
        self._check(value)
        if not value.is_homogeneous(self.ring.m):
            raise DegreeError(f"substituted value must have weighted degree {self.ring.m}")
        powers = [self.ring.one]
        acc = self.ring.zero
        for j, coeff in sorted(self.t_coefficients().items()):
            while len(powers) <= j:
                powers.append(powers[-1] * value)
            acc = acc + coeff * powers[j]
        return acc

    def evaluate(self, point: Iterable[Scalar]) -> Scalar:
        """Value at ``(x0, .., xn, t)``."""
        f = self.ring.field
        point = [f(v) for v in point]
        if len(point) != self.ring.nvars:
            raise ValueError("point has the wrong length")
        total = f.zero
        for mon, c in self.terms.items():
            v = c
            for x, e in zip(point, mon):
                if e:
                    v = v * x**e
            total = total + v
        return f.reduce(total)

    def map_coefficients(self, ring: Ring) -> Poly:
        """Reinterpret in a ring over another field (e.g. reduce Q -> F_p)."""
        return Poly(ring, {mon: ring.field(c) for mon, c in self.terms.items()})

    # printing

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        f = self.ring.field
        names = [f"x{i}" for i in range(self.ring.n + 1)] + ["t"]
        pieces = []
        for mon, c in self.sorted_terms():
            c = f.signed(c)
            neg = c < 0
            mag = -c if neg else c
            factors = [
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, mon) if e
            ]
            cs = f.to_str(mag) if f.is_prime_field else _frac_str(mag)
            if not factors:
                body = cs
            elif cs == "1":
                body = "*".join(factors)
            else:
                body = "*".join([cs] + factors)
            pieces.append(("-" if neg else "+", body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_str

    def __repr__(self) -> str:
        return f"Poly({self.to_str()!r})"


def _frac_str(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# parsing

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S)")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    for mt in _TOKEN.finditer(text):
        start = mt.start()
        if mt.group(1) is not None:
            tokens.append(("num", mt.group(1), start))
        elif mt.group(2) is not None:
            tokens.append(("name", mt.group(2), start))
        else:
            ch = mt.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, v, pos = self.take()
        if v != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        p = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {v!r}", pos)
        return p

    def expr(self) -> Poly:
        acc = self.term()
        while True:
            kind, v, _ = self.peek()
            if kind == "op" and v in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if v == "+" else acc - rhs
            else:
                return acc

    def term(self) -> Poly:
        acc = self.unary()
        while True:
            kind, v, pos = self.peek()
            if kind == "op" and v == "*":
                self.take()
                acc = acc * self.unary()
            elif kind == "op" and v == "/":
                self.take()
                _, _, dpos = self.peek()
                den = self.unary()
                if not den.is_constant() or not den:
                    raise ParseError("can only divide by a nonzero constant", dpos)
                try:
                    acc = acc.scale(self.ring.field.inv(den.constant_value()))
                except (FieldError, ZeroDivisionError) as exc:
                    raise ParseError(str(exc), dpos) from None
            else:
                return acc

    def unary(self) -> Poly:
        kind, v, _ = self.peek()
        if kind == "op" and v in "+-":
            self.take()
            inner = self.unary()
            return -inner if v == "-" else inner
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        kind, v, _ = self.peek()
        if kind == "op" and v == "^":
            self.take()
            k, e, pos = self.take()
            if k != "num":
                raise ParseError("exponent must be a non-negative integer", pos)
            return base ** int(e)
        return base

    def atom(self) -> Poly:
        kind, v, pos = self.take()
        if kind == "num":
            try:
                return self.ring.const(int(v))
            except FieldError as exc:
                raise ParseError(str(exc), pos) from None
        if kind == "name":
            if v == "t":
                return self.ring.t
            mt = re.fullmatch(r"x(\d+)", v)
            if mt and int(mt.group(1)) <= self.ring.n:
                return self.ring.var(int(mt.group(1)))
            raise ParseError(f"unknown variable {v!r}", pos)
        if kind == "op" and v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos)


def parse_poly(text: str, ring: Ring) -> Poly:
    return _Parser(text, ring).parse()


# sampling

def random_homogeneous(
    degree: int,
    ring: Ring,
    seed: int | random.Random,
    *,
    with_t: bool = True,
    bound: int = 100,
) -> Poly:
    """Form of weighted degree ``degree`` with independent uniform coefficients.

    Coefficients are uniform over F_p, or uniform integers in ``[-bound, bound]``
    over Q (zero allowed in both cases).  ``seed`` may be an existing
    :class:`random.Random` so that several draws share one stream.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    f = ring.field
    terms = {mon: f.random_element(rng, bound) for mon in ring.monomials(degree, with_t)}
    return Poly(ring, terms)


def sum_of_monomials(degree: int, ring: Ring, with_t: bool = False) -> Poly:
    return Poly(ring, {mon: ring.field.one for mon in ring.monomials(degree, with_t)})


def iter_monomial_polys(ring: Ring, degree: int, with_t: bool = True) -> Iterator[Poly]:
    one = ring.field.one
    for mon in ring.monomials(degree, with_t):
        yield Poly._raw(ring, {mon: one})


PolyLike = Union[Poly, int, Fraction]
