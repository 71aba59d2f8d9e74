"""Cross-check every tensor method against the splitting-principle oracle.

Prints one line per (r, q) with per-method timings in ms.
"""

import argparse
import time

from chernprod.bench import prd
from chernprod.chern import TENSOR_METHODS, bundle_pair
from chernprod.oracle import ORACLE_MAX_RANK, oracle_chern


def main():
    ap = argparse.ArgumentParser(description="method agreement table")
    ap.add_argument("--max-n", type=int, default=12, help="largest r*q to check")
    args = ap.parse_args()
    if args.max_n > ORACLE_MAX_RANK:
        ap.error(f"the oracle stops at r*q = {ORACLE_MAX_RANK}")

    names = list(TENSOR_METHODS)
    print(f"{'r,q':>6} {'oracle':>9}" + "".join(f"{n:>17}" for n in names))
    failures = 0
    for N in range(1, args.max_n + 1):
        for r, q in prd(N):
            t0 = time.perf_counter()
            truth = oracle_chern("tensor", r, q)
            cells = [f"{(time.perf_counter() - t0) * 1e3:9.1f}"]
            E, F = bundle_pair(r, q)
            for name in names:
                t0 = time.perf_counter()
                ok = TENSOR_METHODS[name](E, F) == truth
                ms = (time.perf_counter() - t0) * 1e3
                failures += not ok
                cells.append(f"{ms:14.1f} {'ok' if ok else '!!'}")
            print(f"{f'{r},{q}':>6} " + "".join(cells))
    print("all methods agree" if not failures else f"{failures} disagreements")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
