from __future__ import annotations

import random
from math import comb

import pytest

from oracles import sympy_rank

from ulrichmf.field import QQ, FieldSpec
from ulrichmf.gradedideal import contains_all_degree, ideal_degree_dim, make_slice, quotient_hilbert
from ulrichmf.polyring import DegreeError, Ring, random_homogeneous, sum_of_monomials

R = Ring(3, 2, QQ)
x, y, z, w = R.gens()


def test_variables_span_degree_one():
    assert ideal_degree_dim(make_slice([x, y, z, w], 1)) == 4


def test_single_square():
    s = make_slice([x**2], 2)
    assert ideal_degree_dim(s) == 1
    assert not contains_all_degree(s)


def test_empty_ideal_quotient():
    assert quotient_hilbert(make_slice([], 2, R)) == comb(5, 3) == 10


def test_variables_fill_degree_two():
    assert quotient_hilbert(make_slice([x, y, z, w], 2)) == 0


def test_fourth_powers_and_linear_form_fill_degree_eight():
    ring = Ring(3, 4, QQ)
    a, b, c, d = ring.gens()
    s = make_slice([a**4, b**4, c**4, d**4, (a + b + c + d) ** 4], 8)
    assert ideal_degree_dim(s) == 165
    assert quotient_hilbert(s) == 0


@pytest.mark.parametrize("field,p", [(FieldSpec.prime(10007), 10007), (QQ, 0)])
def test_all_ones_variant_leaves_a_quotient_at_444(field, p):
    # the all-ones quartic does NOT complete x^4, y^4, z^4, w^4 to all octics:
    # 31 products against the 31 octics with exponents <= 3 have rank 26
    ring = Ring(3, 4, field)
    a, b, c, d = ring.gens()
    s = make_slice([a**4, b**4, c**4, d**4, sum_of_monomials(4, ring)], 8)
    rows, ncols = s.rows()
    assert quotient_hilbert(s) == 5 == ncols - sympy_rank(rows, p)
    assert not contains_all_degree(s)


def test_linear_power_variant_mod_p():
    ring = Ring(3, 4, FieldSpec.prime(10007))
    a, b, c, d = ring.gens()
    assert contains_all_degree(make_slice([a**4, b**4, c**4, d**4, (a + b + c + d) ** 4], 8))


def test_rejects_non_homogeneous_and_t():
    with pytest.raises(DegreeError):
        make_slice([x + y**2], 3)
    with pytest.raises(DegreeError):
        make_slice([R.t], 3)
    s = make_slice([R.t, x**2], 2, with_t=True)
    # ambient: 10 forms of degree 2 plus t
    assert s.ambient_dim() == 11 and ideal_degree_dim(s) == 2


def test_dimensions_add_up_with_t():
    s = make_slice([R.t * x, y**3], 4, with_t=True)
    assert quotient_hilbert(s) + ideal_degree_dim(s) == comb(7, 3) + comb(5, 3) + 1


@pytest.mark.parametrize("e,deg", [(1, 3), (2, 4), (3, 3), (2, 5)])
def test_principal_monomial_ideal(e, deg):
    mono = x ** (e - 1) * z
    assert ideal_degree_dim(make_slice([mono], deg)) == comb(deg - e + 3, 3)


def test_monotone_in_generators():
    rng = random.Random(8)
    gens = []
    last = 0
    for d in (3, 2, 4, 1, 3):
        gens.append(random_homogeneous(d, R, rng, with_t=False))
        dim = ideal_degree_dim(make_slice(gens, 4))
        assert dim >= last
        last = dim
