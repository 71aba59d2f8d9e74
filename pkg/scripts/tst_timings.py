"""Regenerate the TST(N) timing curves as CSV and print a compact table.

    python scripts/tst_timings.py --max 24 -o results/tst_timings.csv
"""

import argparse
import sys
from collections import defaultdict
from pathlib import Path

from chernprod.bench import bench, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min", type=int, default=1)
    ap.add_argument("--max", type=int, default=24)
    ap.add_argument("-m", "--methods", default="companion,resultant,chern-character")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--timeout", type=float, default=120.0)
    ap.add_argument("-o", "--output", default="results/tst_timings.csv")
    args = ap.parse_args()

    methods = args.methods.split(",")
    Path(args.output).parent.mkdir(parents=True, exist_ok=True)
    rows = bench(
        args.min, args.max, methods, args.repeats, args.timeout or None,
        progress=lambda N, m, ms: print(f"  N={N:3d} {m:16s} {'timeout' if ms is None else f'{ms:10.1f} ms'}",
                                        file=sys.stderr, flush=True),
    )
    write_csv(rows, args.output)

    table = defaultdict(dict)
    for N, m, ms in rows:
        table[N][m] = "timeout" if ms is None else f"{ms:.1f}"
    print("N".rjust(4) + "".join(m.rjust(18) for m in methods))
    for N in sorted(table):
        print(f"{N:4d}" + "".join(table[N].get(m, "").rjust(18) for m in methods))
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
