from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import det_cofactor, sympy_rank
from ulrichmf.exactla import ExactMatrix, det_scalar, kernel, rank, rank_of_rows, solve
from ulrichmf.field import QQ, FieldSpec

F = FieldSpec.prime(10007)
SMALL = FieldSpec.prime(5)


def _random(rows, cols, field, rng, bound=9):
    return ExactMatrix.from_rows([[field.random_element(rng, bound) for _ in range(cols)] for _ in range(rows)], field)


def test_rank_trivial():
    assert rank(ExactMatrix.identity(5, QQ)) == 5
    assert rank(ExactMatrix.zeros(3, 7, F)) == 0
    assert rank(ExactMatrix.from_rows([], QQ, cols=4)) == 0


def test_det_trivial():
    assert det_scalar(ExactMatrix.identity(6, F)) == 1
    assert det_scalar(ExactMatrix.from_rows([[2, 0, 0], [0, 3, 0], [0, 0, 5]], QQ)) == 30
    with pytest.raises(ValueError):
        det_scalar(ExactMatrix.zeros(2, 3, QQ))


def test_det_needs_row_swap_and_fractions():
    m = ExactMatrix.from_rows([[0, Fraction(1, 2)], [Fraction(2, 3), 5]], QQ)
    assert det_scalar(m) == Fraction(-1, 3)


@pytest.mark.parametrize("field", [QQ, F, SMALL])
def test_det_matches_cofactor_up_to_five(field):
    rng = random.Random(4)
    for n in range(1, 6):
        for _ in range(10):
            m = _random(n, n, field, rng)
            assert det_scalar(m) == det_cofactor(m.to_rows(), field.reduce)


@pytest.mark.parametrize("field,p", [(QQ, 0), (F, 10007), (SMALL, 5)])
def test_rank_matches_sympy(field, p):
    rng = random.Random(5)
    for _ in range(20):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        # build low rank matrices too
        k = rng.randint(1, min(r, c))
        left = _random(r, k, field, rng, 3)
        right = _random(k, c, field, rng, 3)
        m = left @ right
        assert rank(m) == sympy_rank(m.to_rows(), p)


def test_large_prime_uses_python_path():
    big = FieldSpec.prime(2**61 - 1)
    rng = random.Random(2)
    m = _random(6, 6, big, rng)
    assert rank(m) == sympy_rank(m.to_rows(), 2**61 - 1)


def test_solve_round_trip_and_inconsistency():
    rng = random.Random(6)
    m = _random(5, 7, F, rng)
    x0 = [F.random_element(rng) for _ in range(7)]
    rhs = m.apply(x0)
    x = solve(m, rhs)
    assert x is not None and m.apply(x) == rhs
    v = [1, 2, 3]
    assert solve(ExactMatrix.identity(3, QQ), v) == [1, 2, 3]
    assert solve(ExactMatrix.zeros(2, 2, QQ), [1, 0]) is None


def test_kernel_is_annihilated():
    rng = random.Random(7)
    m = _random(3, 6, QQ, rng)
    ker = kernel(m)
    assert len(ker) == 6 - rank(m)
    for v in ker:
        assert all(x == 0 for x in m.apply(v))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 10**6), st.booleans())
def test_rank_is_transpose_invariant(r, c, seed, modp):
    field = SMALL if modp else QQ
    m = _random(r, c, field, random.Random(seed), 2)
    assert rank(m) == rank(m.transpose())


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10**6))
def test_rank_invariant_under_row_operations(r, c, seed):
    rng = random.Random(seed)
    m = _random(r, c, F, rng, 3)
    rows = m.to_rows()
    for _ in range(10):
        i, j = rng.randrange(r), rng.randrange(r)
        if i != j:
            a = rng.randrange(10007)
            rows[i] = [(x + a * y) % 10007 for x, y in zip(rows[i], rows[j])]
    assert rank_of_rows(rows, c, F) == rank(m)


def test_rank_of_m2_witness_differential():
    from ulrichmf.decompose import build_differential, witness_tuple

    dm = build_differential(witness_tuple(2, 2, 2))
    rows = dm.matrix.to_rows()
    # one row per source monomial: 4 slots of 10 quadrics and 10 for p_m
    assert (dm.matrix.rows, dm.matrix.cols) == (50, 35)
    assert rank(dm.matrix) == 35 == sympy_rank(rows)
