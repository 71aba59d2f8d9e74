"""Exact multivariate polynomials over Q with a weighted grading.

Chern classes live here as variables: ``x_k`` (classes of the first bundle)
and ``y_k`` (second bundle) carry weight ``k``; the formal parameters ``s``,
``t`` and root variables ``a_i``, ``b_j`` carry weight 1.  Arithmetic is
delegated to FLINT's ``fmpq_mpoly``; everything grading-related (degrees,
components, truncation, printing order) is handled here.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

import flint
from flint.utils.flint_exceptions import DomainError

__all__ = [
    "Context",
    "ContextError",
    "ParseError",
    "InexactDivisionError",
    "Polynomial",
    "UnivariateView",
    "Variable",
    "default_weight",
    "poly_add",
    "poly_sub",
    "poly_neg",
    "poly_mul",
    "poly_pow",
    "poly_substitute",
    "graded_component",
    "graded_components",
    "poly_parse",
    "poly_format",
    "poly_from_json",
    "as_univariate",
]

_NAME_RE = re.compile(r"[a-z][0-9]*")
_CLASS_RE = re.compile(r"[xy]([0-9]+)")


class ContextError(ValueError):
    """Raised when polynomials from different contexts are mixed, or a name is unknown."""


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class InexactDivisionError(ArithmeticError):
    pass


def default_weight(name: str) -> int:
    """``x<k>``/``y<k>`` weigh ``k``; every other variable weighs 1."""
    m = _CLASS_RE.fullmatch(name)
    return int(m.group(1)) if m else 1


@dataclass(frozen=True)
class Variable:
    name: str
    weight: int


@dataclass(frozen=True)
class Context:
    """An ordered set of named, weighted variables."""

    names: tuple[str, ...]
    weights: tuple[int, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ContextError(f"duplicate variable names in {names}")
        for n in names:
            if not _NAME_RE.fullmatch(n):
                raise ContextError(f"invalid variable name {n!r}")
        if self.weights is None:
            weights = tuple(default_weight(n) for n in names)
        else:
            weights = tuple(int(w) for w in self.weights)
        if len(weights) != len(names) or any(w < 0 for w in weights):
            raise ContextError("weights must be nonnegative, one per variable")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def of(cls, *names: str) -> "Context":
        return cls(tuple(names))

    @classmethod
    def standard(cls, r: int, q: int = 0, extra: Sequence[str] = ("s", "t")) -> "Context":
        """``x1..xr, y1..yq`` followed by ``extra`` (by default ``s, t``)."""
        names = [f"x{i}" for i in range(1, r + 1)] + [f"y{j}" for j in range(1, q + 1)]
        return cls(tuple(names) + tuple(extra))

    @classmethod
    def infer(cls, names: Iterable[str]) -> "Context":
        """Context over ``names`` in canonical order (x's, y's, other letters, s, t)."""

        def key(n: str):
            m = re.fullmatch(r"([a-z])([0-9]*)", n)
            letter, idx = m.group(1), m.group(2)
            rank = {"x": 0, "y": 1, "s": 3, "t": 4}.get(letter, 2)
            return (rank, letter, int(idx) if idx else -1)

        return cls(tuple(sorted(set(names), key=key)))

    @cached_property
    def flint(self):
        return flint.fmpq_mpoly_ctx.get(self.names, "lex")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def variables(self) -> tuple[Variable, ...]:
        return tuple(Variable(n, w) for n, w in zip(self.names, self.weights))

    def index(self, name: Union[str, Variable]) -> int:
        name = name.name if isinstance(name, Variable) else name
        try:
            return self._index[name]
        except KeyError:
            raise ContextError(f"unknown variable {name!r} (context has {', '.join(self.names)})") from None

    def __contains__(self, name) -> bool:
        name = name.name if isinstance(name, Variable) else name
        return name in self._index

    def gen(self, name: Union[str, Variable]) -> "Polynomial":
        return Polynomial(self, self.flint.gens()[self.index(name)])

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, self.flint.constant(_to_fmpq(c)))

    def zero(self) -> "Polynomial":
        return Polynomial(self, self.flint.constant(0))

    def one(self) -> "Polynomial":
        return Polynomial(self, self.flint.constant(1))

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, self.flint.from_dict({tuple(exps): _to_fmpq(coeff)}))

    def weighted_degree(self, exps: Sequence[int]) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    def union(self, other: "Context") -> "Context":
        names = list(self.names) + [n for n in other.names if n not in self]
        weights = list(self.weights) + [w for n, w in zip(other.names, other.weights) if n not in self]
        return Context(tuple(names), tuple(weights))


def _to_fmpq(c):
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, int):
        return flint.fmpq(c)
    if isinstance(c, Rational):
        return flint.fmpq(int(c.numerator), int(c.denominator))
    if isinstance(c, str):
        f = Fraction(c)
        return flint.fmpq(f.numerator, f.denominator)
    raise TypeError(f"cannot use {type(c).__name__} as an exact rational coefficient")


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


_Scalar = (int, Rational, flint.fmpq)


class Polynomial:
    """Immutable polynomial bound to a :class:`Context`.

    Supports ``+ - * **`` with other polynomials of the same context and with
    exact rational scalars (``int``, ``Fraction``).
    """

    __slots__ = ("ctx", "raw")

    def __init__(self, ctx: Context, raw=None):
        self.ctx = ctx
        self.raw = ctx.flint.constant(0) if raw is None else raw

    @classmethod
    def from_terms(cls, ctx: Context, terms: Mapping[Sequence[int], object]) -> "Polynomial":
        data = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != ctx.nvars or any(e < 0 for e in exps):
                raise ContextError(f"exponent vector {exps} does not fit context {ctx.names}")
            c = _to_fmpq(c)
            if c != 0:
                data[exps] = c
        return cls(ctx, ctx.flint.from_dict(data))

    # -- inspection ---------------------------------------------------------

    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return {tuple(e): _to_fraction(c) for e, c in self.raw.terms()}

    def named_terms(self) -> dict[tuple[tuple[str, int], ...], Fraction]:
        names = self.ctx.names
        out = {}
        for exps, c in self.raw.terms():
            key = tuple((names[i], e) for i, e in enumerate(exps) if e)
            out[key] = _to_fraction(c)
        return out

    def __len__(self) -> int:
        return len(self.raw)

    def is_zero(self) -> bool:
        return self.raw.is_zero()

    def __bool__(self) -> bool:
        return not self.raw.is_zero()

    def is_constant(self) -> bool:
        return self.raw.is_constant()

    def constant_value(self) -> Fraction:
        if not self.raw.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms().get((0,) * self.ctx.nvars, Fraction(0))

    def is_integral(self) -> bool:
        return all(c.q == 1 for c in self.raw.coeffs())

    def variables(self) -> set[str]:
        used = set()
        for exps in self.raw.monoms():
            used.update(self.ctx.names[i] for i, e in enumerate(exps) if e)
        return used

    def degree_in(self, var: Union[str, Variable]) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        i = self.ctx.index(var)
        return max(e[i] for e in self.raw.monoms())

    def weighted_degree(self) -> int:
        """Maximal weighted degree of a term; -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        w = self.ctx.weights
        return max(sum(e * wi for e, wi in zip(exps, w)) for exps in self.raw.monoms())

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {self.ctx.weighted_degree(e) for e in self.raw.monoms()}
        if degree is None:
            return len(degs) <= 1
        return degs <= {degree}

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise ContextError(f"context mismatch: {self.ctx.names} vs {other.ctx.names}")
            return other.raw
        if isinstance(other, _Scalar):
            return _to_fmpq(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Polynomial(self.ctx, self.raw + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Polynomial(self.ctx, self.raw - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Polynomial(self.ctx, o - self.raw)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Polynomial(self.ctx, self.raw * o)

    __rmul__ = __mul__

    def __neg__(self):
        return Polynomial(self.ctx, -self.raw)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        return Polynomial(self.ctx, self.raw**n)

    def __truediv__(self, other):
        """Division by a nonzero scalar, or exact division by a polynomial."""
        if isinstance(other, _Scalar):
            c = _to_fmpq(other)
            if c == 0:
                raise ZeroDivisionError("division by zero")
            return Polynomial(self.ctx, self.raw * (1 / c))
        return self.exact_div(other)

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot divide by {type(other).__name__}")
        if isinstance(o, flint.fmpq):
            return self / o
        if o.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        try:
            return Polynomial(self.ctx, self.raw / o)
        except DomainError as exc:
            raise InexactDivisionError(str(exc)) from None

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            if other.ctx == self.ctx:
                return self.raw == other.raw
            return self.named_terms() == other.named_terms()
        if isinstance(other, _Scalar):
            return self.raw == _to_fmpq(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.named_terms().items()))

    # -- transformations ----------------------------------------------------

    def substitute(self, var: Union[str, Variable], value) -> "Polynomial":
        return poly_substitute(self, var, value)

    def to_context(self, ctx: Context) -> "Polynomial":
        """Re-express in ``ctx``, matching variables by name."""
        if ctx == self.ctx:
            return self
        missing = self.variables() - set(ctx.names)
        if missing:
            raise ContextError(f"variables {sorted(missing)} are not in the target context")
        return Polynomial(ctx, self.raw.project_to_context(ctx.flint))

    def components(self) -> dict[int, "Polynomial"]:
        """Homogeneous components keyed by weighted degree."""
        w = self.ctx.weights
        buckets: dict[int, dict] = {}
        for exps, c in self.raw.terms():
            d = 0
            for e, wi in zip(exps, w):
                d += e * wi
            buckets.setdefault(d, {})[exps] = c
        fl = self.ctx.flint
        return {d: Polynomial(self.ctx, fl.from_dict(b)) for d, b in sorted(buckets.items())}

    def truncate(self, max_degree: int) -> "Polynomial":
        """Drop every term of weighted degree above ``max_degree``."""
        w = self.ctx.weights
        kept = {e: c for e, c in self.raw.terms() if sum(a * b for a, b in zip(e, w)) <= max_degree}
        return Polynomial(self.ctx, self.ctx.flint.from_dict(kept))

    def __str__(self):
        return poly_format(self)

    def __repr__(self):
        return f"Polynomial({poly_format(self)!r})"


# -- module-level operations --------------------------------------------------


def _check_same(a: Polynomial, b: Polynomial):
    if a.ctx != b.ctx:
        raise ContextError(f"context mismatch: {a.ctx.names} vs {b.ctx.names}")


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    _check_same(a, b)
    return a + b


def poly_sub(a: Polynomial, b: Polynomial) -> Polynomial:
    _check_same(a, b)
    return a - b


def poly_neg(a: Polynomial) -> Polynomial:
    return -a


def poly_mul(a: Polynomial, b: Polynomial, truncate_above: int | None = None) -> Polynomial:
    """Product of ``a`` and ``b``.

    With ``truncate_above=D`` only pairs of homogeneous components whose degrees
    sum to at most ``D`` are multiplied, so the high-degree part is never formed.
    """
    _check_same(a, b)
    if truncate_above is None:
        return a * b
    if truncate_above < 0:
        raise ValueError("truncate_above must be nonnegative")
    ca, cb = a.components(), b.components()
    raw = a.ctx.flint.constant(0)
    for da, pa in ca.items():
        for db, pb in cb.items():
            if da + db <= truncate_above:
                raw += pa.raw * pb.raw
    return Polynomial(a.ctx, raw)


def poly_pow(a: Polynomial, n: int, truncate_above: int | None = None) -> Polynomial:
    if n < 0:
        raise ValueError("exponent must be a nonnegative integer")
    if truncate_above is None:
        return a**n
    result = a.ctx.one().truncate(truncate_above)
    base = a.truncate(truncate_above)
    while n:
        if n & 1:
            result = poly_mul(result, base, truncate_above)
        n >>= 1
        if n:
            base = poly_mul(base, base, truncate_above)
    return result


def poly_substitute(p: Polynomial, var: Union[str, Variable], value) -> Polynomial:
    """Replace ``var`` by ``value`` (a polynomial or scalar) and expand."""
    ctx = p.ctx
    i = ctx.index(var)
    if isinstance(value, Polynomial):
        value = value.to_context(ctx)
    else:
        value = ctx.constant(value)
    if value.is_constant():
        return Polynomial(ctx, p.raw.subs({i: _to_fmpq(value.constant_value())}))
    gens = list(ctx.flint.gens())
    gens[i] = value.raw
    return Polynomial(ctx, p.raw.compose(*gens, ctx=ctx.flint))


def graded_component(p: Polynomial, k: int) -> Polynomial:
    if k < 0:
        raise ValueError("degree must be nonnegative")
    return p.components().get(k, p.ctx.zero())


def graded_components(p: Polynomial, top: int) -> list[Polynomial]:
    """Components of weighted degree ``0..top`` (missing ones are zero)."""
    comps = p.components()
    return [comps.get(k, p.ctx.zero()) for k in range(top + 1)]


# -- univariate view ----------------------------------------------------------


@dataclass(frozen=True)
class UnivariateView:
    """A polynomial read as ``sum(coefficients[i] * main_var**i)``."""

    main_var: str
    coefficients: tuple[Polynomial, ...]
    ctx: Context

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_coefficients(cls, ctx: Context, var: str, coeffs: Iterable) -> "UnivariateView":
        """Build from ascending coefficients (polynomials or scalars)."""
        cs = tuple(c if isinstance(c, Polynomial) else ctx.constant(c) for c in coeffs)
        return cls(var, cs, ctx)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Polynomial:
        return self.coefficients[-1] if self.coefficients else self.ctx.zero()

    def coefficient(self, i: int) -> Polynomial:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else self.ctx.zero()

    def to_polynomial(self) -> Polynomial:
        v = self.ctx.gen(self.main_var)
        acc = self.ctx.zero()
        for c in reversed(self.coefficients):
            acc = acc * v + c
        return acc


def as_univariate(p: Polynomial, var: Union[str, Variable]) -> UnivariateView:
    ctx = p.ctx
    i = ctx.index(var)
    buckets: dict[int, dict] = {}
    for exps, c in p.raw.terms():
        k = exps[i]
        rest = exps[:i] + (0,) + exps[i + 1 :]
        buckets.setdefault(k, {})[rest] = c
    top = max(buckets, default=-1)
    fl = ctx.flint
    coeffs = tuple(Polynomial(ctx, fl.from_dict(buckets.get(k, {}))) for k in range(top + 1))
    name = var.name if isinstance(var, Variable) else var
    return UnivariateView(name, coeffs, ctx)


# -- text and JSON ------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>[0-9]+(?:/[0-9]+)?)|(?P<var>[a-z][0-9]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            off = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[off]!r}", off)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: Context):
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str):
        kind, val, off = self.peek()
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"{msg}, found {what}", off)

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail("expected operator")
        return p

    def expr(self):
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.unary()
        if self.peek()[0] in ("num", "var") or self.peek()[1] == "(":
            self.fail("expected '*' between factors")
        return acc

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in ("-", "+"):
            self.take()
            inner = self.unary()
            return -inner if val == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, _ = self.peek()
            if kind != "num" or "/" in val:
                self.fail("expected nonnegative integer exponent")
            self.take()
            base = base ** int(val)
        return base

    def atom(self):
        kind, val, off = self.peek()
        if kind == "num":
            self.take()
            return self.ctx.constant(Fraction(val))
        if kind == "var":
            self.take()
            if val not in self.ctx:
                raise ParseError(f"unknown variable {val!r}", off)
            return self.ctx.gen(val)
        if kind == "op" and val == "(":
            self.take()
            inner = self.expr()
            if not (self.peek()[0] == "op" and self.peek()[1] == ")"):
                self.fail("expected ')'")
            self.take()
            return inner
        self.fail("expected number, variable or '('")


def poly_parse(text: str, ctx: Context | None = None) -> Polynomial:
    """Parse the text grammar (``1/2*x1^2 - (s + t)*y1``).

    Without ``ctx`` the context is inferred from the variable names used.
    """
    if ctx is None:
        names = [val for kind, val, _ in _tokenize(text) if kind == "var"]
        ctx = Context.infer(names)
    return _Parser(text, ctx).parse()


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _sorted_terms(p: Polynomial):
    # weighted degree descending, then reverse-lexicographic like a graded revlex order
    ctx = p.ctx
    items = [(tuple(e), _to_fraction(c)) for e, c in p.raw.terms()]
    items.sort(key=lambda it: (-ctx.weighted_degree(it[0]), it[0][::-1]))
    return items


def poly_format(p: Polynomial, mode: str = "text") -> str:
    if mode == "json":
        return json.dumps(poly_to_json(p), separators=(",", ":"))
    if mode != "text":
        raise ValueError(f"unknown format mode {mode!r}")
    items = _sorted_terms(p)
    if not items:
        return "0"
    names = p.ctx.names
    parts = []
    for exps, c in items:
        mono = "*".join(
            names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exps) if e
        )
        if not mono:
            s = _format_coeff(c)
        elif c == 1:
            s = mono
        elif c == -1:
            s = "-" + mono
        else:
            s = f"{_format_coeff(c)}*{mono}"
        if parts and not s.startswith("-"):
            s = "+" + s
        parts.append(s)
    return "".join(parts)


def poly_to_json(p: Polynomial) -> dict:
    names = p.ctx.names
    return {
        "terms": [
            {"exps": {names[i]: e for i, e in enumerate(exps) if e}, "coeff": _format_coeff(c)}
            for exps, c in _sorted_terms(p)
        ]
    }


def poly_from_json(data, ctx: Context | None = None) -> Polynomial:
    if isinstance(data, str):
        data = json.loads(data)
    terms = data["terms"]
    if ctx is None:
        ctx = Context.infer(n for t in terms for n in t["exps"])
    out = {}
    for t in terms:
        exps = [0] * ctx.nvars
        for name, e in t["exps"].items():
            exps[ctx.index(name)] = int(e)
        out[tuple(exps)] = Fraction(t["coeff"])
    return Polynomial.from_terms(ctx, out)
