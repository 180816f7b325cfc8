import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from quadgauss import gauss_numeric as gn


def test_least_irreducible_examples():
    assert gn.least_irreducible(2, 2) == (1, 1, 1)
    assert gn.least_irreducible(3, 2) == (1, 0, 1)
    assert gn.least_irreducible(7, 1) == (0, 1)
    assert not gn.is_irreducible([1, 0, 1], 5)  # x^2 + 1 = (x - 2)(x - 3)


@pytest.mark.parametrize("p,f", [(2, 3), (2, 5), (3, 3), (5, 2), (7, 2)])
def test_irreducible_count_via_rabin(p, f):
    # Gauss count of monic irreducibles of degree f
    want = sum(_mobius(f // d) * p**d for d in range(1, f + 1) if f % d == 0) // f
    got = sum(
        gn.is_irreducible(list(c) + [1], p)
        for c in np.ndindex(*([p] * f))
    )
    assert got == want


def _mobius(n):
    out, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def test_field_tables_consistent():
    fld = gn.build_field(3, 4)
    q = fld.q
    assert sorted(fld.exp_table.tolist()) == list(range(1, q))
    assert fld.dlog[0] == -1
    assert all(fld.dlog[fld.exp_table[k]] == k for k in range(0, q - 1, 7))
    # trace is F_p-linear and onto
    assert set(fld.trace.tolist()) == {0, 1, 2}


def test_prime_field_matches_oracle():
    for p, m in [(7, 3), (7, 6), (13, 4), (29, 7), (31, 5)]:
        fld = gn.build_field(p, 1)
        assert fld.gen == oracles.smallest_primitive_root(p)
        for a in range(1, m):
            want = oracles.prime_field_gauss_sum(p, m, a)
            assert abs(gn.gauss_sum_numeric(fld, m, a).value - want) < 1e-9


def test_f7_quadratic():
    g = gn.gauss_sum_numeric(gn.build_field(7, 1), 2, 1).value
    assert abs(g - 1j * math.sqrt(7)) < 1e-12


def test_fft_route_matches_direct():
    fld = gn.build_field(2, 6)
    allg = gn.gauss_sums_all(fld)
    for a in (1, 5, 21, 40):
        assert abs(allg[a] - gn.gauss_sum_numeric(fld, 63, a).value) < 1e-9


def test_basic_properties_20_9():
    fld = gn.build_field(29, 2)
    rep = gn.check_basic_properties(fld, 20)
    assert rep.passed
    g = gn.gauss_sum_numeric(fld, 20, 1)
    assert abs(abs(g) ** 2 - 841) < 1e-8


def test_conjugate_test_20_9():
    fld = gn.build_field(29, 2)
    e0 = frozenset({1, 3, 7, 9})
    rep = gn.conjugate_report(fld, 20, e0)
    assert rep.passed and rep.inside_max < 1e-9 and rep.outside_max > 1
    with pytest.raises(ValueError):
        gn.conjugate_report(fld, 20, {1, 3})


@pytest.mark.parametrize("p,h", [(7, 1), (5, 2), (3, 3), (3, 5), (11, 3)])
def test_quadratic_closed_form(p, h):
    assert gn.check_quadratic_closed_form(p, h)


def test_quadratic_norm_route_matches_table_route():
    for p, h in [(3, 4), (5, 3), (7, 3)]:
        fld = gn.build_field(p, h)
        direct = gn.gauss_sum_numeric(fld, 2, 1).value
        assert abs(gn.quadratic_gauss_sum(p, h).value - direct) < 1e-8


@pytest.mark.parametrize("p,f,m,s,a", [(7, 1, 3, 2, 1), (5, 1, 4, 3, 1), (3, 2, 8, 2, 1), (2, 3, 7, 2, 3)])
def test_davenport_hasse(p, f, m, s, a):
    assert gn.check_davenport_hasse(gn.build_field(p, f), gn.build_field(p, f * s), m, s, a)


@pytest.mark.parametrize("p,m,h", [(5, 3, 2), (5, 6, 2), (2, 5, 4), (2, 3, 6), (3, 4, 2), (3, 4, 6)])
def test_semiprimitive_sign(p, m, h):
    assert gn.check_semiprimitive(p, m, h)


def test_semiprimitive_rejects():
    assert gn.semiprimitive_prediction(5, 8, 2) is None
    with pytest.raises(ValueError):
        gn.check_semiprimitive(5, 8, 2)


def test_find_prime():
    assert gn.find_prime_in_class(20, 9, 100) == 29
    assert gn.find_prime_in_class(3, 1, 100) == 7
    assert gn.find_prime_in_class(20, 9, 20) is None


def test_compensated_sum():
    vals = np.array([1.0, 1e-20, -1.0] * 1000, dtype=np.longdouble)
    assert abs(float(gn.compensated_sum(vals)) - 1e-17) < 1e-25


@given(st.sampled_from([(2, 4), (2, 6), (3, 3), (5, 2), (7, 2), (13, 1), (3, 4)]), st.integers(1, 10**6))
@settings(max_examples=40, deadline=None)
def test_norm_and_frobenius(pf, a):
    p, f = pf
    fld = gn.build_field(p, f)
    n = fld.q - 1
    a %= n
    g = gn.gauss_sum_numeric(fld, n, a).value
    if a == 0:
        assert abs(g + 1) < 1e-9
        return
    assert abs(abs(g) ** 2 - fld.q) < 1e-7 * fld.q
    assert abs(gn.gauss_sum_numeric(fld, n, a * p % n).value - g) < 1e-7 * math.sqrt(fld.q)


def test_determinant_mod_p_matches_sympy():
    import sympy
    rng = np.random.default_rng(1)
    for n in (1, 2, 3, 4, 5):
        for p in (3, 7, 11):
            mats = rng.integers(0, p, (50, n, n))
            got = gn._det_mod(mats, p)
            want = [int(sympy.Matrix(m.tolist()).det()) % p for m in mats]
            assert got.tolist() == want
