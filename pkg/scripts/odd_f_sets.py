"""Print the quadratic-but-never-rational pairs (m, pbar) for each odd order f."""

import argparse
import time

from quadgauss.classifier import classify_odd_f


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("orders", nargs="*", type=int, default=[1, 3, 5, 7])
    ap.add_argument("--audit-rate", type=float, default=0.01)
    args = ap.parse_args()
    for f in args.orders:
        t0 = time.perf_counter()
        found = sorted(classify_odd_f(f, audit_rate=args.audit_rate))
        body = ", ".join(f"({m},{p})" for m, p in found)
        print(f"f = {f}: {{{body}}}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
