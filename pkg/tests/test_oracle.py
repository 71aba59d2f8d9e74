import itertools
from math import prod

import pytest
from hypothesis import given, strategies as st

from chernprod.chern import bundle, power_sums_from_elementary
from chernprod.oracle import (
    ORACLE_MAX_RANK,
    AsymmetryError,
    OracleSizeError,
    RootSystem,
    expand_construction,
    oracle_chern,
    root_system,
    symmetric_reduce,
)
from chernprod.ring import Context, poly_format, poly_parse, poly_substitute


def system(r, q=0):
    sys = root_system(r, q)
    ctx = sys.ctx
    return sys, ctx, [ctx.gen(f"a{i}") for i in range(1, r + 1)], [ctx.gen(f"b{j}") for j in range(1, q + 1)]


def e(k, roots, ctx):
    return sum((prod(c, start=ctx.one()) for c in itertools.combinations(roots, k)), ctx.zero())


def lift(p, sys):
    """Substitute x_k = e_k(a), y_k = e_k(b) back into a reduced polynomial."""
    ctx = sys.ctx
    for roots, targets in sys.groups:
        gens = [ctx.gen(a) for a in roots]
        for k, name in enumerate(targets, start=1):
            p = poly_substitute(p, name, e(k, gens, ctx))
    return p


def test_reduce_examples():
    sys, ctx, a, _ = system(2)
    assert symmetric_reduce(a[0] ** 2 + a[1] ** 2, sys) == poly_parse("x1^2 - 2*x2", ctx)
    assert symmetric_reduce(a[0] * a[1], sys) == ctx.gen("x2")
    sys, ctx, a, b = system(1, 1)
    assert symmetric_reduce(a[0] + b[0], sys) == poly_parse("x1 + y1", ctx)


@pytest.mark.parametrize("r", [1, 2, 3, 5, 7])
def test_elementary_reduce_to_classes(r):
    sys, ctx, a, _ = system(r)
    for k in range(1, r + 1):
        assert symmetric_reduce(e(k, a, ctx), sys) == ctx.gen(f"x{k}")


def test_asymmetric_input():
    sys, ctx, a, b = system(3, 2)
    with pytest.raises(AsymmetryError):
        symmetric_reduce(a[0] ** 2 + a[1], sys)
    with pytest.raises(AsymmetryError):
        symmetric_reduce(a[0] + a[1] + a[2] + b[0] ** 2 + b[1], sys)


def test_root_system_validation():
    ctx = Context.of("a1", "a2", "x1", "x2")
    with pytest.raises(ValueError):
        RootSystem(ctx, ((("a1", "a2"), ("x1",)),))
    with pytest.raises(ValueError):
        RootSystem(ctx, ((("a1",), ("x1",)), (("a1",), ("x2",))))


def test_expand_examples():
    sys, ctx, a, b = system(1, 1)
    assert expand_construction("tensor", a, b) == poly_parse("1 + a1*t + b1*t", ctx)
    sys, ctx, a, _ = system(2)
    assert expand_construction("wedge2", a) == poly_parse("1 + a1 + a2", ctx)
    assert expand_construction("sym2", a) == poly_parse("(1 + 2*a1)*(1 + a1 + a2)*(1 + 2*a2)", ctx)
    with pytest.raises(ValueError):
        expand_construction("wedge_k", a, k=3)
    with pytest.raises(ValueError):
        expand_construction("tensor", a)


def test_oracle_examples():
    assert [poly_format(c) for c in oracle_chern("tensor", 1, 1)] == ["1", "x1+y1"]
    assert [poly_format(c) for c in oracle_chern("tensor", 2, 1)] == ["1", "x1+2*y1", "x2+x1*y1+y1^2"]
    assert [poly_format(c) for c in oracle_chern("wedge2", 3)] == ["1", "2*x1", "x1^2+x2", "x1*x2-x3"]


def test_wedge_k_extremes():
    E = bundle(4)
    assert list(oracle_chern("wedge_k", 4, k=1)) == [E.c(k) for k in range(5)]
    assert [poly_format(c) for c in oracle_chern("wedge_k", 4, k=4)] == ["1", "x1"]
    assert [poly_format(c) for c in oracle_chern("wedge_k", 3, k=0)] == ["1", "0"]


def test_size_guard():
    with pytest.raises(OracleSizeError, match="reduce"):
        oracle_chern("tensor", 2, 11)
    with pytest.raises(OracleSizeError):
        oracle_chern("wedge2", 8)
    assert ORACLE_MAX_RANK == 21


def test_bad_arguments():
    with pytest.raises(ValueError):
        oracle_chern("tensor", 2)
    with pytest.raises(ValueError):
        oracle_chern("wedge_k", 3, k=5)
    with pytest.raises(ValueError):
        oracle_chern("cube", 2)


@pytest.mark.parametrize("r", range(1, 6))
@pytest.mark.parametrize("m", range(1, 9))
def test_newton_cross_check(r, m):
    sys, ctx, a, _ = system(r)
    reduced = symmetric_reduce(sum((ai**m for ai in a), ctx.zero()), sys)
    xs = [ctx.gen(f"x{k}") for k in range(1, r + 1)]
    assert reduced == power_sums_from_elementary(xs, m)[m - 1]


@given(
    st.integers(1, 3),
    st.integers(1, 2),
    st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)), min_size=1, max_size=3),
)
def test_round_trip_on_symmetrised_input(r, q, monos):
    """Symmetrise random monomials over both groups, reduce, lift back."""
    sys, ctx, a, b = system(r, q)
    p = ctx.zero()
    for ea, eb, c in monos:
        for pa in itertools.permutations(a):
            for pb in itertools.permutations(b):
                p = p + c * pa[0] ** ea * pb[0] ** eb
    reduced = symmetric_reduce(p, sys)
    assert not (reduced.variables() & {n for g in sys.groups for n in g[0]})
    assert lift(reduced, sys) == p
