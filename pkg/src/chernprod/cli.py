"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 oracle size guard, 64 usage,
74 unwritable output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import bench as benchmod
from .chern import bundle, bundle_pair, sym2, top_chern, wedge2
from .oracle import OracleSizeError, oracle_chern
from .resultant import DegenerateInputError, NotMonicError, resultant
from .ring import Context, ParseError, poly_format, poly_parse, ContextError

EXIT_OK, EXIT_VERIFY, EXIT_GUARD, EXIT_USAGE, EXIT_IO = 0, 1, 2, 64, 74


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {v}")
    return v


def _emit_total(cls, args, label="c"):
    if args.truncate is not None:
        cls = cls.truncate(args.truncate)
    if args.format == "json":
        print(json.dumps(cls.to_json()))
    else:
        for k, c in enumerate(cls.components[1:], start=1):
            print(f"{label}{k} = {poly_format(c)}")


def cmd_tensor(args) -> int:
    if args.method == "oracle":
        cls = oracle_chern("tensor", args.r, args.q)
    else:
        cls = benchmod.tensor_by_method(args.method, args.r, args.q, args.truncate)
    _emit_total(cls, args)
    return EXIT_OK


def cmd_wedge2(args) -> int:
    _emit_total(wedge2(bundle(args.r)), args)
    return EXIT_OK


def cmd_sym2(args) -> int:
    _emit_total(sym2(bundle(args.r)), args)
    return EXIT_OK


def cmd_top(args) -> int:
    E, F = bundle_pair(args.r, args.q)
    p = top_chern(E, F)
    if args.format == "json":
        print(json.dumps({"degree": args.r * args.q, "top": poly_format(p)}))
    else:
        print(f"c{args.r * args.q} = {poly_format(p)}")
    return EXIT_OK


def cmd_resultant(args) -> int:
    names = []
    try:
        for text in (args.a, args.b):
            names += [v for v in poly_parse(text).ctx.names]
        ctx = Context.infer(names + [args.var])
        a, b = poly_parse(args.a, ctx), poly_parse(args.b, ctx)
        res = resultant(a, b, args.var, args.method)
    except (ParseError, ContextError, NotMonicError, DegenerateInputError) as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        print(json.dumps({"resultant": poly_format(res)}))
    else:
        print(poly_format(res))
    return EXIT_OK


def cmd_oracle(args) -> int:
    kind = {"wedge-k": "wedge_k"}.get(args.kind, args.kind)
    if kind == "tensor" and args.q is None:
        raise UsageError("--q is required for --kind tensor")
    if kind == "wedge_k" and args.k is None:
        raise UsageError("--k is required for --kind wedge-k")
    try:
        cls = oracle_chern(kind, args.r, args.q, args.k)
    except OracleSizeError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit_total(cls, args)
    return EXIT_OK


def cmd_prd(args) -> int:
    pairs = benchmod.prd(args.N)
    if args.format == "json":
        print(json.dumps([list(p) for p in pairs]))
    else:
        print(" ".join(f"({m},{n})" for m, n in pairs))
    return EXIT_OK


def cmd_tst(args) -> int:
    records = benchmod.tst(args.N, args.method, verify=args.verify)
    if args.format == "json":
        print(json.dumps([r.to_json() for r in records]))
    else:
        for r in records:
            status = "" if r.ok is None else ("  ok" if r.ok else "  FAILED")
            print(f"N={r.N} (m,n)=({r.m},{r.n}) {r.method} {r.wall_time_ms:.3f} ms{status}")
    failed = [r for r in records if r.ok is False]
    if failed:
        for r in failed:
            print(f"verification failed for (m,n)=({r.m},{r.n}) with {r.method}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.min > args.max:
        raise UsageError(f"--min {args.min} exceeds --max {args.max}")
    methods = [m for m in args.methods.split(",") if m]
    bad = [m for m in methods if m not in benchmod.METHODS]
    if bad or not methods:
        raise UsageError(f"unknown method(s) {bad}; choose from {', '.join(benchmod.METHODS)}")
    try:
        open(args.output, "a").close()
    except OSError as exc:
        print(f"cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_IO

    def progress(N, meth, ms):
        shown = "timeout" if ms is None else f"{ms:.1f} ms"
        print(f"N={N:3d} {meth:16s} {shown}", file=sys.stderr, flush=True)

    timeout = None if args.timeout <= 0 else args.timeout
    rows = benchmod.bench(args.min, args.max, methods, args.repeats, timeout, progress)
    benchmod.write_csv(rows, args.output)
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    """Random monic-resultant agreement, seeded by --seed."""
    from .resultant import resultant_companion, resultant_sylvester
    from .ring import UnivariateView

    rng = random.Random(args.seed)
    ctx = Context.of("t")
    bad = 0
    for _ in range(args.count):
        ra, qb = rng.randint(0, 6), rng.randint(1, 6)
        a = [rng.randint(-5, 5) for _ in range(ra)] + [rng.choice([c for c in range(-5, 6) if c])]
        b = [rng.randint(-5, 5) for _ in range(qb)] + [1]
        A = UnivariateView.from_coefficients(ctx, "t", a)
        B = UnivariateView.from_coefficients(ctx, "t", b)
        if resultant_companion(A, B) != resultant_sylvester(A, B):
            bad += 1
    print(f"seed={args.seed} pairs={args.count} mismatches={bad}")
    return EXIT_VERIFY if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--truncate", type=_nonneg, default=None, metavar="D",
                        help="drop components of degree above D")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized self-tests")

    p = _Parser(prog="chernprod", description="Chern classes of tensor products, wedge^2 and S^2.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    methods = benchmod.METHODS
    s = sub.add_parser("tensor", parents=[common], help="total Chern class of E (x) F")
    s.add_argument("-r", "--r", type=_positive, required=True)
    s.add_argument("-q", "--q", type=_positive, required=True)
    s.add_argument("-m", "--method", choices=methods, default="companion")
    s.set_defaults(func=cmd_tensor)

    for name, func in (("wedge2", cmd_wedge2), ("sym2", cmd_sym2)):
        s = sub.add_parser(name, parents=[common], help=f"total Chern class of {name}(E)")
        s.add_argument("-r", "--r", type=_positive, required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("top", parents=[common], help="top Chern class of E (x) F via a resultant")
    s.add_argument("-r", "--r", type=_positive, required=True)
    s.add_argument("-q", "--q", type=_positive, required=True)
    s.set_defaults(func=cmd_top)

    s = sub.add_parser("resultant", parents=[common], help="resultant of two polynomials")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--var", default="t")
    s.add_argument("--method", choices=("sylvester", "companion"), default="sylvester")
    s.set_defaults(func=cmd_resultant)

    s = sub.add_parser("oracle", parents=[common], help="splitting-principle ground truth")
    s.add_argument("--kind", choices=("tensor", "wedge2", "sym2", "wedge-k"), required=True)
    s.add_argument("-r", "--r", type=_positive, required=True)
    s.add_argument("-q", "--q", type=_positive)
    s.add_argument("-k", "--k", type=_nonneg)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("prd", parents=[common], help="rank splits m*n = N")
    s.add_argument("N", type=_positive)
    s.set_defaults(func=cmd_prd)

    s = sub.add_parser("tst", parents=[common], help="run TST(N) once, per pair")
    s.add_argument("N", type=_positive)
    s.add_argument("-m", "--method", choices=methods, default="companion")
    s.add_argument("--verify", action="store_true", help="compare every pair with the oracle")
    s.set_defaults(func=cmd_tst)

    s = sub.add_parser("bench", parents=[common], help="time TST(N) over a range of N, write CSV")
    s.add_argument("--min", type=_positive, default=1)
    s.add_argument("--max", type=_positive, required=True)
    s.add_argument("-m", "--methods", default="companion,resultant,chern-character")
    s.add_argument("--repeats", type=_positive, default=1)
    s.add_argument("--timeout", type=float, default=120.0, help="seconds per (N, method); 0 disables")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("selfcheck", parents=[common], help="randomized resultant cross-check")
    s.add_argument("--count", type=_positive, default=200)
    s.set_defaults(func=cmd_selfcheck)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"chernprod {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleSizeError as exc:
        print(f"chernprod {args.command}: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
