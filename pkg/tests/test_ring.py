from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chernprod.ring import (
    Context,
    ContextError,
    InexactDivisionError,
    ParseError,
    Polynomial,
    as_univariate,
    graded_component,
    graded_components,
    poly_format,
    poly_from_json,
    poly_mul,
    poly_parse,
    poly_pow,
    poly_substitute,
    poly_to_json,
)

CTX = Context.of("x1", "x2", "y1", "s", "t")


def P(text, ctx=CTX):
    return poly_parse(text, ctx)


# -- worked examples -------------------------------------------------------------


def test_difference_of_squares():
    assert poly_mul(P("1 + x1"), P("1 - x1")) == P("1 - x1^2")


def test_truncation_uses_weighted_degree():
    # x1*t already has weight 2; x1*y1*t^2 has weight 4
    a, b = P("1 + x1*t"), P("1 + y1*t")
    assert poly_mul(a, b, truncate_above=1) == P("1")
    assert poly_mul(a, b, truncate_above=3) == P("1 + x1*t + y1*t")
    assert poly_mul(a, b, truncate_above=4) == a * b


def test_rational_scalar():
    assert P("1/2 + x1") * 2 == P("1 + 2*x1")


def test_substitute_t_to_one():
    assert poly_substitute(P("1 + x1*t + x2*t^2"), "t", 1) == P("1 + x1 + x2")


def test_substitute_absent_variable():
    assert poly_substitute(P("x1"), "t", P("s + x2")) == P("x1")


def test_substitute_binomial():
    assert poly_substitute(P("t^2"), "t", P("s + 1")) == P("s^2 + 2*s + 1")


def test_substitute_unknown_variable():
    with pytest.raises(ContextError):
        poly_substitute(P("x1"), "z", 1)


@pytest.mark.parametrize(
    "text,k,expected",
    [("1 + 3*x1 + 2*x1^2", 2, "2*x1^2"), ("x2 + x1^2", 2, "x2 + x1^2"), ("1 + x1", 5, "0")],
)
def test_graded_component(text, k, expected):
    assert graded_component(P(text), k) == P(expected)


def test_parse_term_map():
    p = poly_parse("x1*y2 - 1/2*s")
    assert p.named_terms() == {(("x1", 1), ("y2", 1)): 1, (("s", 1),): Fraction(-1, 2)}


def test_parse_error_offset():
    with pytest.raises(ParseError) as info:
        poly_parse("x1 +* 2")
    assert info.value.offset == 4


@pytest.mark.parametrize("bad", ["x1 x2", "2^x1", "x1^-1", "(x1", "x1 +", "X1"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        poly_parse(bad)


def test_parse_unknown_variable_in_context():
    with pytest.raises(ParseError, match="unknown variable"):
        poly_parse("z3 + 1", CTX)


def test_univariate_views():
    ctx = Context.standard(0, 2)
    v = as_univariate(poly_parse("y2 + y1*t + t^2", ctx), "t")
    assert [poly_format(c) for c in v.coefficients] == ["y2", "y1", "1"]
    assert as_univariate(P("x1"), "t").coefficients == (P("x1"),)
    assert as_univariate(CTX.zero(), "t").coefficients == ()


def test_format_order():
    assert poly_format(P("y1^2 + x1*y1 + x2")) == "x2+x1*y1+y1^2"
    assert poly_format(P("x2 + x1^2")) == "x1^2+x2"
    assert poly_format(CTX.zero()) == "0"


def test_json_shape():
    data = poly_to_json(P("3/2*x1^2 - s"))
    coeffs = {tuple(sorted(t["exps"].items())): t["coeff"] for t in data["terms"]}
    assert coeffs == {(("x1", 2),): "3/2", (("s", 1),): "-1"}
    assert poly_from_json(data, CTX) == P("3/2*x1^2 - s")


def test_mixed_contexts_rejected():
    other = Context.of("x1", "z")
    with pytest.raises(ContextError):
        poly_mul(P("x1"), other.gen("z"))


def test_exact_division():
    assert P("x1^2 - y1^2").exact_div(P("x1 - y1")) == P("x1 + y1")
    with pytest.raises(InexactDivisionError):
        P("x1^2 + 1").exact_div(P("x1 - y1"))


def test_weights():
    assert P("x2*y1").weighted_degree() == 3
    assert P("s*t").weighted_degree() == 2
    assert CTX.zero().weighted_degree() == -1


# -- properties against a plain dict model --------------------------------------

NV = 4
SMALL = Context.of("x1", "x2", "s", "t")

monomial = st.tuples(*[st.integers(0, 2)] * NV)
rational = st.fractions(min_value=-5, max_value=5, max_denominator=4)
termmaps = st.dictionaries(monomial, rational, max_size=5)


def build(terms):
    return Polynomial.from_terms(SMALL, terms)


def dict_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


@given(termmaps, termmaps)
def test_product_matches_dict_model(a, b):
    assert build(a) * build(b) == build(dict_mul(a, b))


@given(termmaps, termmaps, termmaps)
def test_ring_laws(a, b, c):
    A, B, C = build(a), build(b), build(c)
    assert (A * B) * C == A * (B * C)
    assert A * B == B * A
    assert A * (B + C) == A * B + A * C
    assert A + B == B + A
    assert A - A == SMALL.zero()


@given(termmaps, termmaps)
def test_degree_additive(a, b):
    A, B = build(a), build(b)
    if A and B:
        assert (A * B).weighted_degree() == A.weighted_degree() + B.weighted_degree()


@given(termmaps)
def test_components_partition(a):
    A = build(a)
    top = max(A.weighted_degree(), 0)
    parts = graded_components(A, top)
    assert sum(parts, SMALL.zero()) == A
    for k, part in enumerate(parts):
        assert part.is_homogeneous(k)


@given(termmaps, termmaps, st.integers(0, 8))
def test_truncated_product(a, b, D):
    A, B = build(a), build(b)
    assert poly_mul(A, B, truncate_above=D) == (A * B).truncate(D)


@given(termmaps, st.integers(0, 3), st.integers(0, 6))
def test_truncated_power(a, n, D):
    A = build(a)
    assert poly_pow(A, n, truncate_above=D) == (A**n).truncate(D)


@given(termmaps)
def test_parse_format_round_trip(a):
    A = build(a)
    assert poly_parse(poly_format(A), SMALL) == A
    assert poly_from_json(poly_to_json(A), SMALL) == A


@given(termmaps)
def test_univariate_round_trip(a):
    A = build(a)
    for var in ("t", "x2"):
        v = as_univariate(A, var)
        assert v.to_polynomial() == A
        assert not v.coefficients or v.leading
