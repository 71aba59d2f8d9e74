"""Acceptance criteria, one test per criterion.

The conftest hook prints a PASS/FAIL line per criterion in the terminal summary.
"""

import csv
import itertools
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import prod

import pytest

from chernprod.bench import METHODS, prd
from chernprod.chern import (
    TENSOR_METHODS,
    bundle,
    bundle_pair,
    c_polynomial,
    d_polynomial,
    sym2,
    tensor_c_polynomial,
    tensor_companion,
    top_chern,
    wedge2,
    wedge2_C,
    wedge_complement,
)
from chernprod.cli import main
from chernprod.oracle import oracle_chern
from chernprod.polymat import PolyMatrix, companion_lambda, determinant
from chernprod.resultant import resultant_companion, resultant_sylvester
from chernprod.ring import Context, UnivariateView, poly_format, poly_substitute

criterion = pytest.mark.criterion

PAIRS_UP_TO_12 = [(m, n) for N in range(1, 13) for m, n in prd(N)]
AGREEMENT_METHODS = ("companion", "resultant", "resultant-sym", "chern-character")


@criterion(1, "method agreement on all 35 pairs with r*q <= 12, under 60 s")
def test_ac01_method_agreement():
    assert len(PAIRS_UP_TO_12) == 35
    t0 = time.perf_counter()
    mismatches = []
    for r, q in PAIRS_UP_TO_12:
        E, F = bundle_pair(r, q)
        truth = oracle_chern("tensor", r, q)
        for name in AGREEMENT_METHODS:
            if TENSOR_METHODS[name](E, F) != truth:
                mismatches.append((r, q, name))
    elapsed = time.perf_counter() - t0
    print(f"35 pairs x {len(AGREEMENT_METHODS)} methods + oracle in {elapsed:.1f} s")
    assert not mismatches
    assert elapsed < 60


@criterion(2, "line bundles: c(L (x) L') = 1 + x1 + y1")
def test_ac02_line_bundles():
    E, F = bundle_pair(1, 1)
    for name in AGREEMENT_METHODS:
        assert [poly_format(c) for c in TENSOR_METHODS[name](E, F)] == ["1", "x1+y1"]
    assert [poly_format(c) for c in oracle_chern("tensor", 1, 1)] == ["1", "x1+y1"]


@criterion(3, "wedge^2 determinant equals the oracle for r = 2..6, integral")
def test_ac03_wedge2():
    for r in range(2, 7):
        got = wedge2(bundle(r))
        assert got == oracle_chern("wedge2", r), r
        assert got.is_integral() and got.is_graded()


@criterion(4, "S^2 = c(E;2) c(wedge^2 E) matches the oracle for r = 2..5; E(x)E splits")
def test_ac04_sym2_and_splitting():
    for r in range(2, 6):
        E = bundle(r)
        s2 = sym2(E)
        assert s2 == oracle_chern("sym2", r), r
        assert s2.is_integral()
    for r in range(1, 6):
        E = bundle(r)
        assert tensor_companion(E, E) == wedge2(E).whitney(sym2(E)), r


@criterion(5, "C(E(x)E;s) = 2^r C(E;s/2) C(wedge^2 E;s)^2 for r <= 5")
def test_ac05_square_relation():
    for r in range(1, 6):
        E = bundle(r)
        s = E.ctx.gen("s")
        lhs = tensor_c_polynomial(E, E)
        c_half = poly_substitute(c_polynomial(E, "s").to_polynomial(), "s", s * Fraction(1, 2))
        assert lhs == 2**r * c_half * wedge2_C(E) ** 2, r


@criterion(6, "top_chern equals the degree-rq component for rq <= 10")
def test_ac06_top_class():
    pairs = [(r, q) for r in range(1, 11) for q in range(1, 11) if r * q <= 10]
    for r, q in pairs:
        E, F = bundle_pair(r, q)
        assert top_chern(E, F) == tensor_companion(E, F)[r * q], (r, q)
        assert top_chern(E, F) == oracle_chern("tensor", r, q)[r * q], (r, q)


@criterion(7, "duality: wedge^(r-2) for r = 3 gives C(E;s), for r = 4 gives C(wedge^2 E;s)")
def test_ac07_duality():
    E3 = bundle(3)
    assert wedge_complement(E3) == c_polynomial(E3, "s").to_polynomial()
    E4 = bundle(4)
    assert wedge_complement(E4) == wedge2_C(E4)
    assert wedge_complement(E4) == oracle_chern("wedge_k", 4, k=2).c_polynomial("s")


@criterion(8, "monic-resultant determinant on 200 seeded random pairs")
def test_ac08_monic_resultant():
    rng = random.Random(20240801)
    ctx = Context.of("t")
    for _ in range(200):
        ra, qb = rng.randint(0, 6), rng.randint(1, 6)
        a = [rng.randint(-5, 5) for _ in range(ra)] + [rng.choice([c for c in range(-5, 6) if c])]
        b = [rng.randint(-5, 5) for _ in range(qb)] + [1]
        A = UnivariateView.from_coefficients(ctx, "t", a)
        B = UnivariateView.from_coefficients(ctx, "t", b)
        assert resultant_companion(A, B) == resultant_sylvester(A, B), (a, b)


@criterion(9, "C/D identities for r <= 8")
def test_ac09_c_d_identities():
    for r in range(1, 9):
        E = bundle(r)
        s = E.ctx.gen("s")
        sign = (-1) ** r
        D_s = d_polynomial(E, s, "t").to_polynomial()
        assert sign * poly_substitute(D_s, "t", 0) == c_polynomial(E, "s").to_polynomial()
        D_0 = d_polynomial(E, 0, "t").to_polynomial()
        t = E.ctx.gen("t")
        assert c_polynomial(E, "t").to_polynomial() == sign * poly_substitute(D_0, "t", -t)


@criterion(10, "bench 1..24 for three methods under 10 min, CSV well formed, tst --verify for N <= 12")
def test_ac10_benchmark(tmp_path, capsys):
    out = tmp_path / "timings.csv"
    methods = ["companion", "resultant", "chern-character"]
    t0 = time.perf_counter()
    res = subprocess.run(
        [sys.executable, "-m", "chernprod", "bench", "--min", "1", "--max", "24",
         "-m", ",".join(methods), "-o", str(out)],
        capture_output=True, text=True, timeout=660,
    )
    elapsed = time.perf_counter() - t0
    assert res.returncode == 0, res.stderr
    rows = list(csv.reader(out.read_text(encoding="utf-8").splitlines()))
    assert rows[0] == ["N", "method", "ms"]
    body = rows[1:]
    assert [(int(r[0]), r[1]) for r in body] == [(N, m) for N in range(1, 25) for m in methods]
    timeouts = [r for r in body if r[2] == "timeout"]
    assert not timeouts, timeouts
    assert all(float(r[2]) >= 0 for r in body)
    assert elapsed < 600
    for m in methods:
        worst = max(float(r[2]) for r in body if r[1] == m)
        print(f"{m}: slowest TST(N) {worst:.0f} ms")
    print(f"bench 1..24 wall time {elapsed:.1f} s")

    for N in range(1, 13):
        for method in METHODS:
            assert main(["tst", str(N), "-m", method, "--verify"]) == 0, (N, method)
    capsys.readouterr()


def _elementary(values, k):
    return sum((prod(c) for c in itertools.combinations(values, k)), Fraction(0))


@criterion(11, "Lambda(e(v)) E = E diag(v) and det E = Vandermonde, 50 seeded tuples")
def test_ac11_lambda_eigenstructure():
    rng = random.Random(11)
    ctx = Context.of("t")
    for _ in range(50):
        q = rng.randint(1, 5)
        v = []
        while len(v) < q:
            x = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
            if x not in v:
                v.append(x)
        lam = companion_lambda([ctx.constant(_elementary(v, k)) for k in range(1, q + 1)])
        E = PolyMatrix([[_elementary(v[:j] + v[j + 1:], i) for j in range(q)] for i in range(q)], ctx)
        D = PolyMatrix([[v[i] if i == j else 0 for j in range(q)] for i in range(q)], ctx)
        assert lam @ E == E @ D
        vdm = prod((v[i] - v[j] for i, j in itertools.combinations(range(q), 2)), start=Fraction(1))
        assert determinant(E) == vdm
