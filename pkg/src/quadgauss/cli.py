"""Command-line entry point: sweeps, single pairs, reference diff, odd f, self tests."""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

import numpy as np

from . import characters as ch
from . import classifier as cl
from .arithmetic import euler_phi, mult_order
from .reference import diff_rows, load_reference
from .stickelberger import profile

M_CAP = 10_000


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    return "" if v is None else str(v)


def _select(rec, flt: str, min_h: int) -> bool:
    if rec.h < min_h:
        return False
    if flt == "quadratic":
        return rec.is_quadratic
    if flt == "pure":
        return rec.is_pure
    return True


def cmd_classify(args) -> int:
    if args.m_min > args.m_max:
        raise UsageError("--m-min exceeds --m-max")
    cap = args.unsafe_max or M_CAP
    if args.m_max > cap:
        raise UsageError(f"--m-max above {cap}; pass --unsafe-max N to raise the cap")
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = None
        if args.format == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(cl.ROW_KEYS)
        for rec in cl.enumerate_records(args.m_min, args.m_max, args.jobs):
            if not _select(rec, args.filter, args.min_h):
                continue
            row = rec.as_row()
            if writer:
                writer.writerow([_fmt(row[k]) for k in cl.ROW_KEYS])
            else:
                out.write(json.dumps({k: row[k] for k in cl.ROW_KEYS}) + "\n")
    finally:
        if args.out:
            out.close()
    return 0


def cmd_check(args) -> int:
    m, p = args.m, args.p
    if m < 3 or math.gcd(p, m) != 1:
        raise UsageError("need m >= 3 and gcd(p, m) = 1")
    rec = cl.classify(m, p)
    prof = profile(m, p)
    t = ch.character_table(m)
    at_p = t.trivial_at(p)
    print(f"m = {m}  p = {p % m}  pbar = {rec.pbar}  f = {rec.f}  h = {rec.h}")
    print(f"class: {rec.kind}")
    print(f"coset sums S(t): {sorted(set(prof.entries.values()))} over {len(prof.entries)} cosets")
    print(f"odd characters with chi(p) = 1: {int((t.odd & at_p).sum())}")
    print(f"  with full conductor: {int((t.odd & at_p & t.full_support).sum())}")
    print(f"  with nonvanishing product: {int((t.bad0 & at_p).sum())}")
    if rec.is_quadratic:
        print(f"E0 = {{{', '.join(map(str, sorted(rec.E0)))}}}")
        print(f"A0 = {rec.A0}  A1 = {rec.A1}")
        print(f"annihilator conductor = {rec.conductor}  discriminant = {rec.discriminant}")
        print(f"X^- status: {rec.x_minus_status}")
        for name, ok in cl.audit_structural(rec):
            print(f"audit {name}: {'pass' if ok else 'FAIL'}")
        if not all(ok for _, ok in cl.audit_structural(rec)):
            return 1
    return 0


def cmd_table(args) -> int:
    ref = load_reference(args.reference)
    rows = cl.quadratic_table(1000, args.jobs)
    missing, extra = diff_rows(rows, ref)
    for r in missing:
        print("missing", list(r))
    for r in extra:
        print("extra", list(r))
    print(f"{len(rows)} computed, {len(ref)} reference, {len(missing)} missing, {len(extra)} extra")
    return 0 if not missing and not extra else 1


def cmd_oddf(args) -> int:
    try:
        found = cl.classify_odd_f(args.f)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    body = ", ".join(f"({m},{p})" for m, p in sorted(found))
    print(f"P*_{args.f} = {{{body}}}")
    return 0


def _selftest_checks(max_m: int):
    yield "bernoulli identity", lambda: all(
        ch.verify_ber_identity(m, chi)
        for m in range(3, min(max_m, 60) + 1)
        for chi in ch.character_group(m)
        if not chi.is_principal
    )
    yield "orthogonality", lambda: all(
        ch.orthogonality_sum(m, x) == (euler_phi(m) if x == 1 else 0)
        for m in range(3, max_m + 1)
        for x in range(m)
    )

    def oracle():
        from .stickelberger import quadratic_partition
        for m in range(3, max_m + 1):
            for p in range(1, m):
                if math.gcd(p, m) != 1:
                    continue
                part = quadratic_partition(m, p)
                ok, e0 = ch.criterion_quadratic(m, p)
                if (part is not None) != ok or (ok and part.E0 != e0):
                    return False
        return True
    yield "oracle equivalence", oracle

    def lemmas():
        for d1 in range(1, 41):
            for d2 in range(1, 41):
                if (len(cl.a_minus_set(d1, d2)) == 0) != cl.a_minus_empty_predicted(d1, d2):
                    return False
                if d1 % 4 == 2 and d2 % 4 == 0:
                    single = set(cl.a_minus_set(d1, d2).members) == {(d1 // 2, d2 // 2)}
                    if single != (math.gcd(d1 // 2, d2 // 2) == 1):
                        return False
        return True
    yield "A^- lemmas", lemmas


def cmd_selftest(args) -> int:
    failed = 0
    for name, check in _selftest_checks(args.max_m):
        t0 = time.perf_counter()
        ok = check()
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}  ({time.perf_counter() - t0:.1f}s)")
    return 1 if failed else 0


def cmd_verify_numeric(args) -> int:
    from . import gauss_numeric as gn
    m, pbar = args.m, args.pbar
    if m < 3 or math.gcd(pbar, m) != 1:
        raise UsageError("need m >= 3 and gcd(pbar, m) = 1")
    rec = cl.classify(m, pbar)
    f = mult_order(pbar, m)
    bound = int(round(args.max_q ** (1 / f))) + 1
    p = gn.find_prime_in_class(m, pbar, bound)
    if p is None or p**f > args.max_q:
        print(f"no prime p = {pbar} mod {m} with p^{f} <= {args.max_q}")
        return 1
    fld = gn.build_field(p, f)
    print(f"({m}, {pbar}): class {rec.kind}; using p = {p}, q = {fld.q}")
    results = []
    g = gn.gauss_sum_numeric(fld, m, 1)
    norm_ok = abs(abs(g) ** 2 / fld.q - 1) < 1e-6
    results.append(("|G|^2 = q", norm_ok))
    rep = gn.check_basic_properties(fld, m)
    results.append(("properties (i)-(iv)", rep.passed))
    if rec.is_quadratic:
        crep = gn.conjugate_report(fld, m, rec.E0)
        print(f"  conjugate test: inside {crep.inside_max:.2e}, outside {crep.outside_max:.2e}, tol {crep.tol:.1e}")
        results.append(("conjugate two-value test", crep.passed))
    if rec.kind == cl.SEMI_PRIMITIVE:
        results.append(("semi-primitive sign", gn.check_semiprimitive(p, m, f)))
    for name, ok in results:
        print(f"  {'PASS' if ok else 'FAIL'}  {name}")
    return 0 if all(ok for _, ok in results) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quadgauss", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify every (m, pbar) in a range")
    c.add_argument("--m-min", type=int, required=True)
    c.add_argument("--m-max", type=int, required=True)
    c.add_argument("--filter", choices=("quadratic", "pure", "all"), default="all")
    c.add_argument("--min-h", type=int, default=1)
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.add_argument("--out")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--unsafe-max", type=int, default=None, help="raise the m cap to this value")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("check", help="full report for one pair")
    c.add_argument("m", type=int)
    c.add_argument("p", type=int)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("table", help="diff the m <= 1000, h > 2 sweep against a reference")
    c.add_argument("--reference", default="paper1000", choices=("paper1000",))
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_table)

    c = sub.add_parser("oddf", help="all quadratic pairs with a given odd order f")
    c.add_argument("f", type=int)
    c.set_defaults(func=cmd_oddf)

    c = sub.add_parser("selftest", help="exact identity and oracle suites")
    c.add_argument("--max-m", type=int, default=60)
    c.set_defaults(func=cmd_selftest)

    c = sub.add_parser("verify-numeric", help="numeric Gauss-sum checks for one pair")
    c.add_argument("m", type=int)
    c.add_argument("pbar", type=int)
    c.add_argument("--max-q", type=int, default=2**20)
    c.set_defaults(func=cmd_verify_numeric)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


run = main


if __name__ == "__main__":
    sys.exit(main())
