import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from quadgauss.arithmetic import euler_phi, mult_order
from quadgauss.stickelberger import a_formula, coset_sum, is_pure, profile, quadratic_partition


def test_coset_sum_examples():
    assert coset_sum(1, 9, 2, 20) == 10
    assert coset_sum(11, 9, 2, 20) == 30
    assert coset_sum(1, 1, 1, 7) == 1


def test_profile_examples():
    pr = profile(3, 1)
    assert pr.entries == {1: 1, 2: 2}
    assert pr.f == 1 and pr.h == 2
    assert set(profile(5, 2).entries.values()) == {10}


def test_partition_20_9():
    part = quadratic_partition(20, 9)
    assert part.E0 == frozenset({1, 3, 7, 9})
    assert (part.A0, part.A1) == (10, 30)
    assert part.s1 == 11


def test_partition_39_16():
    part = quadratic_partition(39, 16)
    assert (part.A0, part.A1) == (39, 78)


def test_pure_examples():
    assert is_pure(5, 2)
    assert quadratic_partition(5, 2) is None
    assert not is_pure(20, 9)
    with pytest.raises(ValueError):
        profile(2, 1)


def test_split_matches_brute_force():
    for m in range(3, 151):
        for p in oracles.units(m):
            split = oracles.two_value_split(m, p)
            part = quadratic_partition(m, p)
            if split is None:
                assert part is None, (m, p)
            else:
                assert (part.E0, part.A0, part.A1) == split, (m, p)


@given(st.integers(3, 400), st.integers(1, 10**5))
@settings(max_examples=200, deadline=None)
def test_sum_over_cosets(m, p):
    # every unit appears once across the f shifts
    p %= m
    if math.gcd(p, m) != 1:
        return
    pr = profile(m, p)
    total = sum(pr.s(t) for t in oracles.units(m))
    assert total == pr.f * sum(oracles.units(m))
    assert total * 2 == pr.f * m * euler_phi(m)


@given(st.integers(3, 400), st.integers(1, 10**5))
@settings(max_examples=200, deadline=None)
def test_complement_symmetry(m, p):
    p %= m
    if math.gcd(p, m) != 1:
        return
    pr = profile(m, p)
    for t in list(pr.entries)[:20]:
        assert pr.s(t) + pr.s(m - t) == pr.f * m


@given(st.integers(3, 400), st.integers(1, 10**5))
@settings(max_examples=200, deadline=None)
def test_quadratic_values_and_formula(m, p):
    p %= m
    if math.gcd(p, m) != 1:
        return
    part = quadratic_partition(m, p)
    if part is None:
        return
    f = mult_order(p, m)
    assert part.A0 + part.A1 == f * m
    assert part.A0 != part.A1
    assert a_formula(f, m, part.E0) == part.A0
    assert a_formula(f, m, part.E1) == part.A1
    assert 1 in part.E0 and p in part.E0
    assert Fraction(len(part.E0)) == Fraction(euler_phi(m), 2)
