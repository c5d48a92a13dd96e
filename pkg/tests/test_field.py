from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ulrichmf.field import QQ, FieldError, FieldSpec


def test_parse_rationals_and_primes():
    assert FieldSpec.parse("q") == QQ
    assert FieldSpec.parse("0") == QQ
    f = FieldSpec.parse("10007")
    assert f.is_prime_field and f.characteristic == 10007
    assert f.label == "10007" and QQ.label == "q"


@pytest.mark.parametrize("p", [2, 1, 0 + 9, 10005, -7])
def test_rejects_non_odd_primes(p):
    with pytest.raises(FieldError):
        FieldSpec.prime(p)


def test_rejects_garbage_label():
    with pytest.raises(FieldError):
        FieldSpec.parse("reals")


@pytest.mark.parametrize("p,d", [(10009, 3), (10007, 2), (13, 4), (13, 12), (31, 5)])
def test_root_of_unity_has_exact_order(p, d):
    f = FieldSpec.prime(p, d)
    z = f.zeta
    assert pow(z, d, p) == 1
    assert all(pow(z, j, p) != 1 for j in range(1, d))


def test_no_cube_root_in_f10007():
    # 10006 = 2 * 5003
    with pytest.raises(FieldError):
        FieldSpec.prime(10007, 3)


def test_rationals_roots_of_unity():
    assert FieldSpec.rationals(2).zeta == -1
    with pytest.raises(FieldError):
        FieldSpec.rationals(3)


def test_coercion_and_inverse():
    f = FieldSpec.prime(7)
    assert f(Fraction(1, 2)) == 4
    assert f("3/5") == 3 * pow(5, -1, 7) % 7
    assert f.inv(3) * 3 % 7 == 1
    with pytest.raises(FieldError):
        f(Fraction(1, 7))
    with pytest.raises(ZeroDivisionError):
        f.inv(0)
    assert QQ("-3/6") == Fraction(-1, 2)
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)


def test_signed_representative_and_strings():
    f = FieldSpec.prime(11)
    assert f.signed(10) == -1 and f.signed(5) == 5
    assert QQ.to_str(Fraction(3, 4)) == "3/4" and QQ.to_str(Fraction(2)) == "2"


def test_random_element_ranges():
    rng = random.Random(1)
    f = FieldSpec.prime(10007)
    assert all(0 <= f.random_element(rng) < 10007 for _ in range(200))
    assert all(-5 <= QQ.random_element(rng, 5) <= 5 for _ in range(200))
