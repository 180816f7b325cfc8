"""Acceptance suite: one PASS/FAIL line per criterion.

Run with pytest, or directly with `python tests/test_acceptance.py`.
"""

import math
import sys
import time

import pytest

from quadgauss import characters as ch
from quadgauss import classifier as cl
from quadgauss import gauss_numeric as gn
from quadgauss.arithmetic import factorize, is_prime
from quadgauss.reference import diff_rows, load_reference
from quadgauss.stickelberger import is_pure, quadratic_partition

EXPECTED_ODD_F = {
    1: {(3, 1), (4, 1), (6, 1)},
    3: {(7, 2), (9, 4), (18, 7), (21, 4), (28, 9), (39, 16)},
    5: {(11, 3), (22, 3), (33, 4), (55, 16), (66, 25)},
    7: set(),
}


def _units(m):
    return [p for p in range(1, m) if math.gcd(p, m) == 1]


def _line(n, title, ok, detail, elapsed):
    return f"criterion {n} {'PASS' if ok else 'FAIL'}  {title}: {detail}  ({elapsed:.1f}s)"


@pytest.fixture
def report(capsys):
    def emit(*args):
        with capsys.disabled():
            print("\n" + _line(*args))
    return emit


@pytest.fixture(scope="module")
def sweep():
    return list(cl.enumerate_records(3, 1000))


def criterion_1():
    t0 = time.perf_counter()
    bad = {f: cl.classify_odd_f(f) for f in EXPECTED_ODD_F}
    bad = {f: got for f, got in bad.items() if got != EXPECTED_ODD_F[f]}
    return 1, "odd-f sets f=1,3,5,7", not bad, f"mismatched f: {sorted(bad) or 'none'}", time.perf_counter() - t0


def criterion_2(records):
    t0 = time.perf_counter()
    rows = [(r.m, r.pbar, r.f, r.h) for r in records if r.is_quadratic and r.h > 2]
    ref = load_reference("paper1000")
    missing, extra = diff_rows(rows, ref)
    spot = {(20, 9, 2, 4), (39, 16, 3, 8), (840, 173, 12, 16), (1000, 17, 100, 4)} <= set(rows)
    ok = not missing and not extra and spot
    return 2, "m <= 1000, h > 2 table", ok, f"{len(rows)} rows, {len(missing)} missing, {len(extra)} extra", time.perf_counter() - t0


def criterion_3():
    t0 = time.perf_counter()
    bad = []
    for m in range(3, 201):
        for p in _units(m):
            part = quadratic_partition(m, p)
            ok, e0 = ch.criterion_quadratic(m, p)
            if (part is not None) != ok or (ok and part.E0 != e0):
                bad.append((m, p))
    return 3, "two routes agree for m <= 200", not bad, f"{len(bad)} mismatches", time.perf_counter() - t0


def criterion_4():
    t0 = time.perf_counter()
    n, bad = 0, []
    for m in range(3, 61):
        for chi in ch.character_group(m):
            if chi.is_principal:
                continue
            n += 1
            if not ch.verify_ber_identity(m, chi):
                bad.append((m, chi.exps))
    return 4, "exact Bernoulli identity m <= 60", not bad, f"{n} characters, {len(bad)} failures", time.perf_counter() - t0


def criterion_5():
    t0 = time.perf_counter()
    bad, pure_hits = [], 0
    for m in range(3, 201):
        if len(factorize(m)) != 1:
            continue
        for p in _units(m):
            if is_pure(m, p) != cl.is_semiprimitive(m, p):
                bad.append(("prime power", m, p))
    for m in range(3, 501):
        for p in _units(m):
            if cl.pure_family_condition1(m, p):
                pure_hits += 1
                if not is_pure(m, p):
                    bad.append(("family", m, p))
    return 5, "purity vs semi-primitivity", not bad, f"{pure_hits} family pairs, {len(bad)} exceptions", time.perf_counter() - t0


def criterion_6():
    t0 = time.perf_counter()
    bad = []
    for d1 in range(1, 41):
        for d2 in range(1, 41):
            brute = {
                (a1, a2)
                for a1 in range(1, d1)
                for a2 in range(1, d2)
                if (a1 * d2 + a2 * d1) % (d1 * d2) == 0 and (a1 + a2) % 2
            }
            if set(cl.a_minus_set(d1, d2).members) != brute:
                bad.append(("set", d1, d2))
            g = math.gcd(d1, d2)
            if g % 2 == 0:
                predicted = (d1 & -d1) == (d2 & -d2)
            else:
                predicted = g == 1
            if (not brute) != predicted:
                bad.append(("emptiness", d1, d2))
            if d1 % 4 == 2 and d2 % 4 == 0:
                g1, g2 = d1 // 2, d2 // 2
                if (brute == {(g1, g2)}) != (math.gcd(g1, g2) == 1):
                    bad.append(("half", d1, d2))
    return 6, "A^- lemmas d1, d2 <= 40", not bad, f"{len(bad)} exceptions", time.perf_counter() - t0


def criterion_7():
    t0 = time.perf_counter()
    fld = gn.build_field(29, 2)
    norm = abs(abs(gn.gauss_sum_numeric(fld, 20, 1)) ** 2 / 841 - 1)
    props = gn.check_basic_properties(fld, 20, tol=1e-8)
    props_ok = max(props.frobenius_dev, props.conjugate_dev) < 1e-8
    conj = gn.conjugate_two_value_test(fld, 20, cl.classify(20, 9).E0)
    closed_bad = [
        (p, h)
        for p in range(3, 201)
        if is_prime(p)
        for h in (1, 2, 3)
        if not gn.check_quadratic_closed_form(p, h, tol=1e-6)
    ]
    dh = gn.check_davenport_hasse(gn.build_field(7, 1), gn.build_field(7, 2), 3, 2, tol=1e-6)
    ok = norm < 1e-6 and props_ok and conj and not closed_bad and dh
    detail = (f"|G|^2 dev {norm:.1e}, properties {'ok' if props_ok else 'bad'}, "
              f"conjugate {conj}, closed form failures {len(closed_bad)}, Davenport-Hasse {dh}")
    return 7, "numeric Gauss sums", ok, detail, time.perf_counter() - t0


def criterion_8(records):
    t0 = time.perf_counter()
    n, bad = 0, []
    for rec in records:
        if not rec.is_quadratic:
            continue
        for name, ok in cl.audit_structural(rec):
            n += 1
            if not ok:
                bad.append((rec.m, rec.pbar, name))
    return 8, "structural audits on the m <= 1000 sweep", not bad, f"{n} audits, {len(bad)} failures", time.perf_counter() - t0


def test_criterion_1_odd_f_sets(report):
    res = criterion_1()
    report(*res)
    assert res[2]


def test_criterion_2_reference_table(report, sweep):
    res = criterion_2(sweep)
    report(*res)
    assert res[2]


def test_criterion_3_oracle_equivalence(report):
    res = criterion_3()
    report(*res)
    assert res[2]


def test_criterion_4_bernoulli(report):
    res = criterion_4()
    report(*res)
    assert res[2]


def test_criterion_5_purity(report):
    res = criterion_5()
    report(*res)
    assert res[2]


def test_criterion_6_a_minus_lemmas(report):
    res = criterion_6()
    report(*res)
    assert res[2]


def test_criterion_7_numeric(report):
    res = criterion_7()
    report(*res)
    assert res[2]


def test_criterion_8_audits(report, sweep):
    res = criterion_8(sweep)
    report(*res)
    assert res[2]


if __name__ == "__main__":
    records = list(cl.enumerate_records(3, 1000))
    results = [criterion_1(), criterion_2(records), criterion_3(), criterion_4(),
               criterion_5(), criterion_6(), criterion_7(), criterion_8(records)]
    for res in results:
        print(_line(*res))
    sys.exit(0 if all(r[2] for r in results) else 1)
