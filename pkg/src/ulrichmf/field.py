"""Exact coefficient fields: the rationals and odd prime fields.

Elements are plain Python objects so polynomial and matrix code can use the
ordinary operators and call :meth:`FieldSpec.reduce` afterwards:

* over ``Q`` an element is a :class:`fractions.Fraction`;
* over ``F_p`` an element is an ``int`` in ``range(p)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]


class FieldError(ValueError):
    """Raised for invalid field parameters or unrepresentable values."""


def _is_prime(p: int) -> bool:
    from sympy import isprime

    return bool(isprime(p))


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    characteristic: int = 0
    root_of_unity_order: int | None = None
    zeta: Scalar | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.kind not in ("rationals", "prime_field"):
            raise FieldError(f"unknown field kind {self.kind!r}")
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise FieldError("the rationals have characteristic 0")
        else:
            p = self.characteristic
            if p == 2:
                raise FieldError("characteristic 2 is not supported")
            if p < 3 or not _is_prime(p):
                raise FieldError(f"{p} is not an odd prime")
        d = self.root_of_unity_order
        if d is None:
            return
        if d < 1:
            raise FieldError("root of unity order must be positive")
        z = self._find_root_of_unity(d)
        object.__setattr__(self, "zeta", z)

    def _find_root_of_unity(self, d: int) -> Scalar:
        if self.kind == "rationals":
            if d == 1:
                return Fraction(1)
            if d == 2:
                return Fraction(-1)
            raise FieldError(f"Q contains no primitive {d}-th root of unity")
        p = self.characteristic
        if (p - 1) % d:
            raise FieldError(f"F_{p} has no primitive {d}-th root of unity ({d} does not divide {p - 1})")
        rng = random.Random(p * 1009 + d)
        while True:
            z = pow(rng.randrange(1, p), (p - 1) // d, p)
            if all(pow(z, j, p) != 1 for j in range(1, d)):
                return z

    # construction helpers

    @classmethod
    def rationals(cls, root_of_unity_order: int | None = None) -> FieldSpec:
        return cls("rationals", 0, root_of_unity_order)

    @classmethod
    def prime(cls, p: int, root_of_unity_order: int | None = None) -> FieldSpec:
        return cls("prime_field", p, root_of_unity_order)

    @classmethod
    def parse(cls, text: str, root_of_unity_order: int | None = None) -> FieldSpec:
        """``"q"`` (or ``"0"``) selects Q, an integer selects F_p."""
        text = str(text).strip().lower()
        if text in ("q", "qq", "0", "rationals"):
            return cls.rationals(root_of_unity_order)
        try:
            p = int(text)
        except ValueError:
            raise FieldError(f"cannot parse field {text!r}") from None
        return cls.prime(p, root_of_unity_order)

    def with_root_of_unity(self, d: int) -> FieldSpec:
        if self.root_of_unity_order == d:
            return self
        return FieldSpec(self.kind, self.characteristic, d)

    # element arithmetic

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "prime_field"

    @property
    def label(self) -> str:
        return "q" if self.kind == "rationals" else str(self.characteristic)

    @property
    def zero(self) -> Scalar:
        return 0 if self.is_prime_field else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.is_prime_field else Fraction(1)

    def __call__(self, value: Scalar | str) -> Scalar:
        """Coerce an int, Fraction or ``"a/b"`` string into the field."""
        if isinstance(value, str):
            value = Fraction(value)
        if self.kind == "rationals":
            return Fraction(value)
        p = self.characteristic
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise FieldError(f"{value} is not representable in F_{p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def reduce(self, value: Scalar) -> Scalar:
        if self.kind == "rationals":
            return value
        return value % self.characteristic

    def inv(self, value: Scalar) -> Scalar:
        if not value:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "rationals":
            return 1 / Fraction(value)
        return pow(value, -1, self.characteristic)

    def random_element(self, rng: random.Random, bound: int = 100) -> Scalar:
        """Uniform over F_p, or uniform integer in ``[-bound, bound]`` over Q."""
        if self.is_prime_field:
            return rng.randrange(self.characteristic)
        return Fraction(rng.randint(-bound, bound))

    def to_str(self, value: Scalar) -> str:
        if self.is_prime_field:
            return str(value)
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def signed(self, value: Scalar) -> Scalar:
        """Symmetric representative, so F_p elements print as small signed ints."""
        if self.is_prime_field:
            p = self.characteristic
            return value - p if value > p // 2 else value
        return value


QQ = FieldSpec.rationals()
