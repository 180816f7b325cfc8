"""Numeric Gauss-sum checks on every quadratic pair with a prime p and q = p^f under a cap."""

import argparse

from quadgauss import gauss_numeric as gn
from quadgauss.classifier import enumerate_records


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=60)
    ap.add_argument("--max-q", type=int, default=2**16)
    args = ap.parse_args()
    checked = failed = 0
    for rec in enumerate_records(3, args.m_max):
        if not rec.is_quadratic:
            continue
        bound = int(args.max_q ** (1 / rec.f)) + 1
        p = gn.find_prime_in_class(rec.m, rec.pbar, bound)
        if p is None or p**rec.f > args.max_q:
            continue
        fld = gn.build_field(p, rec.f)
        props = gn.check_basic_properties(fld, rec.m)
        conj = gn.conjugate_two_value_test(fld, rec.m, rec.E0)
        checked += 1
        if not (props.passed and conj):
            failed += 1
            print(f"FAIL ({rec.m}, {rec.pbar}) p = {p}: properties {props.passed}, conjugate {conj}")
    print(f"{checked} pairs checked, {failed} failures")


if __name__ == "__main__":
    main()
