from __future__ import annotations

from collections import Counter
from math import comb

import pytest
from hypothesis import given, strategies as st

from ulrichmf.cohomtab import (
    bundle_numerics,
    ci_cohomology,
    degree_invariants,
    ext_dims,
    h0_E,
    h0_E_table,
    h0_line,
    h0_OZ,
    hn1_E,
    hn_E_expanded,
    hn_E_serre,
    hn_line,
    normal_cohomology,
    normal_h0_via_ci,
    splitting,
    splitting_table,
    stability_class,
)

TYPES = [(a, b, m) for m in (2, 3, 4) for a in range(1, m + 1) for b in range(a, m + 1)]


def _h0_brute(n: int, k: int) -> int:
    """Count monomials of degree k in n+1 variables by recursion."""
    if k < 0:
        return 0
    if n == 0:
        return 1
    return sum(_h0_brute(n - 1, k - j) for j in range(k + 1))


def test_h0_line_examples():
    assert h0_line(3, 8) == 165
    assert h0_line(3, -1) == 0
    assert h0_line(3, 0) == 1
    assert hn_line(3, -4) == 1 and hn_line(3, -3) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_h0_line_counts_monomials(n):
    for k in range(-3, 9):
        assert h0_line(n, k) == _h0_brute(n, k)


def test_ci_examples():
    c = ci_cohomology(3, 1, 1, 1)
    assert c.h0 == 2 and c.middle == (0,)
    c = ci_cohomology(3, 2, 2, 0)
    assert c.h0 == 0 and c.h0_OZ == 1
    assert ci_cohomology(3, 2, 3, -1).h0_OZ is None
    with pytest.raises(ValueError):
        ci_cohomology(1, 1, 1, 0)


def test_h0_OZ_is_hilbert_function_of_ci():
    # a complete intersection of type (a, b) in P^3 has Hilbert polynomial a*b*i + const
    for a, b in [(1, 1), (2, 2), (2, 3), (3, 4)]:
        vals = [h0_OZ(3, a, b, i) for i in range(a + b, a + b + 4)]
        assert len({y - x for x, y in zip(vals, vals[1:])}) == 1
        assert vals[1] - vals[0] == a * b


def test_splitting_table_examples():
    for m in (2, 3, 4):
        tab = splitting_table(3, m, m, m)
        assert tab.h0 == 4 and tab.splitting == (0, 0, 0, 0) and tab.ulrich
        assert tab.h0_row[-1] == 0 and tab.hn_row[-3] == 0
    assert splitting_table(3, 3, 1, 3).h0 == 2
    assert splitting_table(3, 2, 1, 1).min_hn_vanish == -1
    assert not splitting_table(3, 3, 2, 3).ulrich


def test_splitting_table_rejects_bad_input():
    with pytest.raises(ValueError):
        splitting_table(3, 2, 3, 1)
    with pytest.raises(ValueError):
        splitting_table(2, 2, 1, 1)


def test_min_hn_vanish_is_minimal():
    for a, b, m in TYPES:
        tab = splitting_table(3, m, a, b, range(-12, 12))
        k = tab.min_hn_vanish
        assert tab.hn_row[k] == 0 and tab.hn_row[k - 1] > 0
        assert all(tab.hn_row[i] == 0 for i in range(k, 12))


def test_table_text_and_dict():
    tab = splitting_table(3, 2, 2, 2, range(-1, 2))
    doc = tab.to_dict()
    assert [r["i"] for r in doc["rows"]] == [-1, 0, 1]
    assert doc["rows"][1]["h0"] == 4 and doc["stability"] == "stable"
    text = tab.to_text()
    assert "h0  h1  h2  h3" in text and "(Ulrich)" in text


def test_stability_examples():
    assert stability_class(3, 3, 3).label == "stable"
    s = stability_class(1, 1, 2)
    assert s.label == "semistable_only_boundary"
    assert set(s.flags) == {"not_gieseker_semistable", "not_simple"}
    assert s.slope_semistable and not s.slope_stable
    assert stability_class(1, 1, 4).label == "not_simple"


def test_normal_cohomology_examples():
    n = normal_cohomology(4, 4, 4)
    assert (n.h0, n.h1, n.chi) == (3, 3, 0)
    n = normal_cohomology(2, 2, 2)
    assert (n.h0, n.h1, n.chi) == (8, 0, 8)
    n = normal_cohomology(4, 3, 4)
    assert (n.h0, n.h1, n.chi) == (1, 1, 0)
    with pytest.raises(ValueError):
        normal_cohomology(5, 5, 5)


def test_normal_h0_agrees_with_normal_sequence():
    for a, b, m in TYPES:
        if m < 4:
            assert normal_h0_via_ci(a, b, m) == normal_cohomology(a, b, m).h0


def test_ext_examples():
    e = ext_dims(4, 4, 4)
    assert e.dims == (1, 0, 0, 1) and e.spherical and e.assumption == "general (X, Y)"
    e = ext_dims(2, 2, 2)
    assert e.ext1 == 5 and e.ext2 == 0
    e = ext_dims(3, 3, 3)
    assert e.ext1 == 6 and e.ext2 == 0
    with pytest.raises(ValueError):
        ext_dims(1, 1, 5)


def test_ext2_vanishes_and_calabi_yau_is_spherical():
    for a, b, m in TYPES:
        e = ext_dims(a, b, m)
        assert e.ext2 == 0
        if m == 4 and a + b > 4:
            assert e.spherical


def test_degree_invariants():
    assert degree_invariants(3, 2, 2, 2).omega_twist == -2
    assert degree_invariants(3, 4, 1, 1).omega_twist == 0
    d = degree_invariants(3, 3, 3, 3)
    assert d.deg_Y == 9 and d.deg_X == 2
    with pytest.raises(ValueError):
        degree_invariants(3, 2, 1, 1, d=3)


def test_bundle_numerics_invariants():
    for a, b, m in TYPES:
        num = bundle_numerics(a, b, m)
        assert num.chi_normal == num.h0_normal - num.h1_normal == a * b * (4 - m)
        assert num.omega_twist == m - 4


@pytest.mark.parametrize("a,b,m", TYPES)
def test_cohomology_routes_agree(a, b, m):
    for i in range(-10, 11):
        assert hn1_E(3, m, a, b, i) == 0
        assert hn_E_serre(3, m, a, b, i) == hn_E_expanded(3, m, a, b, i)
    assert h0_E(3, m, a, b, 0) == h0_E_table(a, b, m)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6), st.integers(3, 5))
def test_h0_monotone_and_initialised(a, b, m, n):
    if a > m or b > m:
        return
    assert h0_E(n, m, a, b, -1) == 0
    row = [h0_E(n, m, a, b, i) for i in range(-3, 8)]
    assert row == sorted(row)
    assert Counter(splitting(a, b, m)) == Counter([0, a - m, b - m, a + b - 2 * m])
    # higher n: the vanishing and Serre routes still agree
    for i in range(-6, 7):
        assert hn1_E(n, m, a, b, i) == 0
        assert hn_E_serre(n, m, a, b, i) == hn_E_expanded(n, m, a, b, i)


def test_h0_E_matches_direct_binomials():
    a, b, m = 1, 2, 3
    for i in range(0, 6):
        expect = comb(i + 3, 3) + comb(i + 3 - 2, 3) * (i >= 2) + comb(i + 3 - 1, 3) * (i >= 1)
        expect += comb(i - 3 + 3, 3) * (i >= 3)
        assert h0_E(3, m, a, b, i) == expect
