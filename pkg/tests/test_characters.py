import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from quadgauss import characters as ch
from quadgauss.characters import ZERO, DirichletCharacter, RootOfUnity
from quadgauss.cyclotomic import CyclotomicElement as CE


def chars(m):
    return ch.character_group(m)


def test_principal_and_zero():
    chi = DirichletCharacter(20, (0, 0))
    assert chi(3).is_one()
    assert chi(10) is ZERO
    assert chi.conductor == 1 and chi.is_principal


def test_examples_mod_20():
    chi = DirichletCharacter(20, (1, 0))
    assert chi.parity == -1 and chi.conductor == 4
    assert chi(3).sign() == -1 and chi(13).sign() == 1
    quartic = DirichletCharacter(20, (0, 1))
    assert quartic.order == 4 and quartic.conductor == 5


def test_group_size_and_order():
    for m in (3, 8, 12, 20, 24, 45):
        grp = chars(m)
        assert len(grp) == oracles.units(m).__len__()
        assert len({c.exps for c in grp}) == len(grp)


def test_conductor_methods_agree():
    for m in range(3, 121):
        for chi in chars(m):
            vals = {x: chi.phase(x) for x in oracles.units(m)}
            c = oracles.conductor_by_constancy(vals, m)
            assert chi.conductor == c == chi.conductor_by_components(), (m, chi.exps)


def test_primitive_agrees_on_units():
    for m in (12, 20, 24, 36, 40):
        for chi in chars(m):
            prim = chi.primitive()
            assert prim.m == chi.conductor
            for x in oracles.units(m):
                if prim.m > 1:
                    assert prim(x % prim.m) == chi(x)


def test_multiplicativity_and_conjugate():
    for m in (7, 15, 16, 21):
        grp = chars(m)
        for a, b in itertools.islice(itertools.product(grp, grp), 200):
            for x, y in [(2, 4), (5, 11), (13, 8)]:
                if math.gcd(x * y, m) != 1:
                    continue
                assert (a * b)(x) == a(x) * b(x)
                assert a(x * y) == a(x) * a(y)
            assert (a * a.conjugate()).is_principal


def test_root_of_unity_arithmetic():
    z = RootOfUnity.of(3, 12)
    assert z == RootOfUnity.of(1, 4)
    assert (z ** 4).is_one()
    assert (z * z.conjugate()).is_one()
    assert RootOfUnity.of(1, 2).sign() == -1
    assert z.as_cyclotomic() == CE.root(4, 1)


def test_product_vanishes_examples():
    # the primitive version is the trivial character mod 1, so the factor at 2 is 1 - 1
    assert ch.product_vanishes(DirichletCharacter(6, (0,)))
    odd3 = DirichletCharacter(12, (0, 1))
    assert odd3.conductor == 3
    # primitive mod 3 at p = 2: 1 - chi(2) = 2
    assert not ch.product_vanishes(odd3)


def test_criterion_examples():
    ok, e0 = ch.criterion_quadratic(20, 9)
    assert ok and e0 == frozenset({1, 3, 7, 9})
    assert ch.criterion_quadratic(5, 2) == (False, None)
    ann = ch.annihilator_of(e0, 20)
    assert ann.conductor == 20 and ann.is_odd
    assert ch.field_discriminant(ann) == -20


def test_table_and_direct_criterion_agree():
    for m in range(3, 81):
        for p in oracles.units(m):
            assert ch.criterion_quadratic(m, p) == ch.criterion_quadratic_direct(m, p), (m, p)


def test_bernoulli_mod_6():
    chi = DirichletCharacter(6, (1,))
    assert chi.conductor == 3
    assert ch.verify_ber_identity(6, chi)


def test_bernoulli_nonzero_iff_odd():
    for m in range(3, 41):
        for chi in chars(m):
            if chi.is_principal:
                continue
            prim = chi.primitive()
            assert (not ch.bernoulli_b1(prim).is_zero()) == prim.is_odd


def test_bernoulli_identity_sample():
    for m in (9, 16, 20, 28, 33):
        for chi in chars(m):
            if not chi.is_principal:
                assert ch.verify_ber_identity(m, chi)


def test_orthogonality():
    for m in range(3, 61):
        for x in range(m):
            want = len(oracles.units(m)) if x == 1 else 0
            assert ch.orthogonality_sum(m, x) == want


def test_counting_route_matches_table():
    for m in range(3, 200):
        t = ch.character_table(m)
        for p in oracles.units(m)[:6]:
            at_p = t.trivial_at(p)
            assert ch.count_nonvanishing(m, p) == int((t.bad0 & at_p).sum()), (m, p)
            assert ch.count_x_minus(m, p) == len(ch.x_minus(m, p)), (m, p)


@given(st.integers(3, 300), st.integers(0, 10**6))
@settings(max_examples=150, deadline=None)
def test_character_values_are_roots(m, k):
    grp = chars(m)
    chi = grp[k % len(grp)]
    for x in oracles.units(m)[:10]:
        v = chi(x)
        assert abs(abs(v.to_complex()) - 1) < 1e-12
        assert (v ** chi.order).is_one()


@given(st.integers(3, 300), st.integers(0, 10**6))
@settings(max_examples=150, deadline=None)
def test_x_minus_members(m, k):
    u = oracles.units(m)
    p = u[k % len(u)]
    for chi in ch.x_minus(m, p):
        assert chi.is_odd and chi(p).is_one()
        assert not ch.product_vanishes(chi)


def test_zero_is_falsy():
    assert not ZERO
    with pytest.raises(ValueError):
        ch.character_table(2)
