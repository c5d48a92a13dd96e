from __future__ import annotations

import random

import pytest

from oracles import det_cofactor
from ulrichmf import polymatrix as pm
from ulrichmf.field import QQ, FieldSpec
from ulrichmf.polyring import Ring, random_homogeneous

R = Ring(3, 1, QQ)


def _random_matrix(n, ring, rng, deg=1):
    return pm.as_matrix([[random_homogeneous(deg, ring, rng, bound=5) for _ in range(n)] for _ in range(n)])


@pytest.mark.parametrize("field", [QQ, FieldSpec.prime(10007)])
def test_symbolic_det_matches_cofactor(field):
    ring = Ring(3, 1, field)
    rng = random.Random(9)
    for n in range(1, 5):
        a = _random_matrix(n, ring, rng)
        assert pm.det(a, ring) == det_cofactor([list(r) for r in a])


def test_det_with_zero_pivot_needs_swap():
    x, y = R.var(0), R.var(1)
    a = pm.as_matrix([[R.zero, x], [y, R.zero]])
    assert pm.det(a, R) == -(x * y)


def test_adjugate_identity():
    rng = random.Random(10)
    a = _random_matrix(3, R, rng)
    d = pm.det(a, R)
    assert pm.matmul(a, pm.adjugate(a, R), R) == pm.identity(3, R, d)


def test_kron_and_blocks_shapes():
    rng = random.Random(11)
    a, b = _random_matrix(2, R, rng), _random_matrix(3, R, rng)
    k = pm.kron(a, b)
    assert len(k) == 6 and k[4][2] == a[1][0] * b[1][2]
    blk = pm.blocks(a, a, a, a)
    assert len(blk) == 4 and blk[3][1] == a[1][1]


def test_evaluation_commutes_with_det():
    from ulrichmf.exactla import det_scalar

    rng = random.Random(12)
    a = _random_matrix(3, R, rng)
    pt = [2, -1, 3, 5, 7]
    assert det_scalar(pm.evaluate(a, pt, R)) == pm.det(a, R).evaluate(pt)


def test_string_round_trip_and_difference():
    rng = random.Random(13)
    a = _random_matrix(2, R, rng)
    assert pm.from_strings(pm.to_strings(a), R) == a
    assert pm.first_difference(a, a) is None
    b = pm.as_matrix([list(a[0]), [a[1][0], a[1][1] + R.var(2)]])
    i, j, res = pm.first_difference(b, a)
    assert (i, j) == (1, 1) and res == R.var(2)


def test_shape_mismatch():
    with pytest.raises(ValueError):
        pm.matmul(pm.identity(2, R), pm.identity(3, R), R)
