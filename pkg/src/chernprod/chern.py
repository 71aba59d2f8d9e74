"""Chern classes of tensor products, second exterior and symmetric powers.

Bundles are described by their Chern classes only (:class:`ChernVector`);
all results are universal polynomial identities in those classes.  Four
routes to ``c(E (x) F)`` are provided:

* :func:`tensor_companion` -- determinant of a matrix polynomial in the
  companion-type matrix built from ``c(F)``;
* :func:`tensor_resultant` -- ``res_t(D(E; s, t), C(F; t))`` with ``s`` symbolic;
* :func:`tensor_resultant_symmetric` -- the half-shifted variant at ``s = 1``;
* :func:`tensor_chern_character` -- power sums and Newton's identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .polymat import PolyMatrix, companion_lambda, determinant, matrix_poly_horner
from .resultant import resultant_companion, resultant_sylvester
from .ring import (
    Context,
    Polynomial,
    UnivariateView,
    as_univariate,
    graded_components,
    poly_format,
    poly_substitute,
)

__all__ = [
    "RankError",
    "ChernVector",
    "TotalClass",
    "bundle",
    "bundle_pair",
    "chern_polynomial",
    "c_polynomial",
    "d_coefficients",
    "d_polynomial",
    "tensor_companion",
    "tensor_c_polynomial",
    "tensor_resultant",
    "tensor_resultant_symmetric",
    "tensor_resultant_monic",
    "tensor_chern_character",
    "top_chern",
    "wedge2_C",
    "wedge2",
    "sym2",
    "wedge_complement",
    "power_sums_from_elementary",
    "elementary_from_power_sums",
    "TENSOR_METHODS",
]


class RankError(ValueError):
    pass


@dataclass(frozen=True)
class ChernVector:
    """Rank ``r`` and the classes ``c_1..c_r`` (``c_0 = 1`` is implicit)."""

    rank: int
    classes: tuple[Polynomial, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise RankError(f"rank must be positive, got {self.rank}")
        object.__setattr__(self, "classes", tuple(self.classes))
        if len(self.classes) != self.rank:
            raise RankError(f"rank {self.rank} needs {self.rank} classes, got {len(self.classes)}")
        ctxs = {c.ctx for c in self.classes}
        if len(ctxs) != 1:
            raise ValueError("all classes must share one context")

    @classmethod
    def symbolic(cls, rank: int, prefix: str = "x", ctx: Context | None = None) -> "ChernVector":
        if rank < 1:
            raise RankError(f"rank must be positive, got {rank}")
        if ctx is None:
            ctx = Context(tuple(f"{prefix}{i}" for i in range(1, rank + 1)) + ("s", "t"))
        return cls(rank, tuple(ctx.gen(f"{prefix}{i}") for i in range(1, rank + 1)))

    @property
    def ctx(self) -> Context:
        return self.classes[0].ctx

    def c(self, k: int) -> Polynomial:
        """``c_k`` with ``c_0 = 1`` and ``c_k = 0`` outside ``0..rank``."""
        if k == 0:
            return self.ctx.one()
        if 1 <= k <= self.rank:
            return self.classes[k - 1]
        return self.ctx.zero()

    def total(self) -> "TotalClass":
        return TotalClass((self.ctx.one(),) + self.classes)


def bundle(r: int, prefix: str = "x") -> ChernVector:
    """Symbolic bundle in the standard context ``x1..xr, s, t``."""
    if r < 1:
        raise RankError(f"rank must be positive, got {r}")
    ctx = {"x": Context.standard(r, 0), "y": Context.standard(0, r)}.get(prefix)
    return ChernVector.symbolic(r, prefix, ctx)


def bundle_pair(r: int, q: int) -> tuple[ChernVector, ChernVector]:
    """Symbolic bundles of ranks ``r`` and ``q`` sharing ``x1..xr, y1..yq, s, t``."""
    if r < 1 or q < 1:
        raise RankError(f"ranks must be positive, got {r} and {q}")
    ctx = Context.standard(r, q)
    return ChernVector.symbolic(r, "x", ctx), ChernVector.symbolic(q, "y", ctx)


@dataclass(frozen=True)
class TotalClass:
    """Total Chern class split into homogeneous parts ``[1, c_1, ..., c_n]``."""

    components: tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise ValueError("a total class has at least the degree-0 component")

    @classmethod
    def from_polynomial(cls, p: Polynomial, rank: int) -> "TotalClass":
        """Split a total class by weighted degree; nothing may exceed ``rank``."""
        if p.weighted_degree() > rank:
            raise ValueError(f"polynomial has degree {p.weighted_degree()} > rank {rank}")
        return cls(tuple(graded_components(p, rank)))

    @classmethod
    def from_c_polynomial(cls, p: Polynomial, var: str, rank: int) -> "TotalClass":
        """Read ``c_k`` off ``C(V; var) = sum_k c_k var^(rank-k)``."""
        view = as_univariate(p, var)
        if view.degree > rank:
            raise ValueError(f"degree {view.degree} in {var} exceeds rank {rank}")
        return cls(tuple(view.coefficient(rank - k) for k in range(rank + 1)))

    @property
    def rank(self) -> int:
        return len(self.components) - 1

    @property
    def ctx(self) -> Context:
        return self.components[0].ctx

    def __getitem__(self, k: int) -> Polynomial:
        return self.components[k]

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def total(self) -> Polynomial:
        return sum(self.components[1:], self.components[0])

    def c_polynomial(self, var: str = "s") -> Polynomial:
        v = self.ctx.gen(var)
        n = self.rank
        return sum((c * v ** (n - k) for k, c in enumerate(self.components)), self.ctx.zero())

    def chern_polynomial(self, var: str = "t") -> Polynomial:
        v = self.ctx.gen(var)
        return sum((c * v**k for k, c in enumerate(self.components)), self.ctx.zero())

    def whitney(self, other: "TotalClass") -> "TotalClass":
        """Total class of the direct sum: convolution of components."""
        n = self.rank + other.rank
        zero = self.ctx.zero()
        out = [zero] * (n + 1)
        for i, a in enumerate(self.components):
            if not a:
                continue
            for j, b in enumerate(other.components):
                if b:
                    out[i + j] = out[i + j] + a * b
        return TotalClass(tuple(out))

    def truncate(self, max_degree: int) -> "TotalClass":
        return TotalClass(self.components[: max_degree + 1])

    def to_context(self, ctx: Context) -> "TotalClass":
        return TotalClass(tuple(c.to_context(ctx) for c in self.components))

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.components)

    def is_graded(self) -> bool:
        return all(c.is_homogeneous(k) for k, c in enumerate(self.components))

    def to_json(self) -> dict:
        return {"rank_product": self.rank, "components": [poly_format(c) for c in self.components]}

    def __str__(self):
        return "\n".join(f"c{k} = {poly_format(c)}" for k, c in enumerate(self.components))


# -- the two auxiliary polynomials -------------------------------------------


def chern_polynomial(V: ChernVector, var: str = "t") -> UnivariateView:
    """``c(V; var) = 1 + c_1 var + ... + c_r var^r``."""
    return UnivariateView.from_coefficients(V.ctx, var, [V.c(k) for k in range(V.rank + 1)])


def c_polynomial(V: ChernVector, var: str = "t") -> UnivariateView:
    """``C(V; var) = sum_k c_k var^(r-k)``: monic, roots are the negated Chern roots."""
    r = V.rank
    return UnivariateView.from_coefficients(V.ctx, var, [V.c(r - i) for i in range(r + 1)])


def d_coefficients(V: ChernVector, s_expr) -> list[Polynomial]:
    """``d_k(V; s) = sum_{i<=k} binom(r-i, k-i) c_i s^(k-i)`` for ``k = 0..r``.

    ``d_k`` is the k-th elementary symmetric function of the shifted roots
    ``s + alpha_i``.
    """
    r = V.rank
    ctx = V.ctx
    s = s_expr if isinstance(s_expr, Polynomial) else ctx.constant(s_expr)
    s_pows = [ctx.one()]
    for _ in range(r):
        s_pows.append(s_pows[-1] * s)
    return [
        sum((comb(r - i, k - i) * V.c(i) * s_pows[k - i] for i in range(k + 1)), ctx.zero())
        for k in range(r + 1)
    ]


def d_polynomial(V: ChernVector, s_expr, var: str = "t") -> UnivariateView:
    """``D(V; s, var) = sum_k (-1)^k d_k(V; s) var^(r-k) = prod_i (var - s - alpha_i)``."""
    r = V.rank
    d = d_coefficients(V, s_expr)
    return UnivariateView.from_coefficients(
        V.ctx, var, [d[r - i] if (r - i) % 2 == 0 else -d[r - i] for i in range(r + 1)]
    )


def _negate_var(view: UnivariateView) -> UnivariateView:
    return UnivariateView(
        view.main_var, tuple(c if i % 2 == 0 else -c for i, c in enumerate(view.coefficients)), view.ctx
    )


def _check_pair(E: ChernVector, F: ChernVector):
    if E.ctx != F.ctx:
        raise ValueError("both bundles must live in the same context")


# -- tensor products ----------------------------------------------------------


def tensor_companion(E: ChernVector, F: ChernVector) -> TotalClass:
    """``c(E (x) F; t) = det(sum_k c_k(E) t^k (I + Lambda(c(F); t))^(r-k))``."""
    _check_pair(E, F)
    ctx = E.ctx
    t = ctx.gen("t")
    lam = companion_lambda([F.c(j) * t**j for j in range(1, F.rank + 1)])
    base = lam.add_scalar(1)
    coeffs = [E.c(k) * t**k for k in range(E.rank + 1)]
    c_t = determinant(matrix_poly_horner(coeffs, base))
    n = E.rank * F.rank
    view = as_univariate(c_t, "t")
    return TotalClass(tuple(view.coefficient(k) for k in range(n + 1)))


def tensor_c_polynomial(E: ChernVector, F: ChernVector) -> Polynomial:
    """``C(E (x) F; s) = res_t(D(E; s, t), C(F; t))`` with ``s`` left symbolic."""
    _check_pair(E, F)
    s = E.ctx.gen("s")
    return resultant_sylvester(d_polynomial(E, s, "t"), c_polynomial(F, "t"))


def tensor_resultant(E: ChernVector, F: ChernVector) -> TotalClass:
    """Total class of ``E (x) F`` from :func:`tensor_c_polynomial`.

    ``s`` is set to 1 and the homogeneous parts are separated by weighted
    degree, so the classes must be homogeneous (``c_k`` of degree ``k``).
    """
    total = poly_substitute(tensor_c_polynomial(E, F), "s", 1)
    return TotalClass.from_polynomial(total, E.rank * F.rank)


def tensor_resultant_symmetric(E: ChernVector, F: ChernVector) -> TotalClass:
    """``c(E (x) F) = res_t(D(E; 1/2, t), (-1)^q D(F; 1/2, -t))``."""
    _check_pair(E, F)
    half = Fraction(1, 2)
    A = d_polynomial(E, half, "t")
    B = _negate_var(d_polynomial(F, half, "t"))
    if F.rank % 2:
        B = UnivariateView(B.main_var, tuple(-c for c in B.coefficients), B.ctx)
    total = resultant_sylvester(A, B)
    return TotalClass.from_polynomial(total, E.rank * F.rank)


def tensor_resultant_monic(E: ChernVector, F: ChernVector) -> TotalClass:
    """Like :func:`tensor_resultant` at ``s = 1`` but through the monic-resultant determinant."""
    _check_pair(E, F)
    total = resultant_companion(d_polynomial(E, 1, "t"), c_polynomial(F, "t"))
    return TotalClass.from_polynomial(total, E.rank * F.rank)


def top_chern(E: ChernVector, F: ChernVector) -> Polynomial:
    """``c_{rq}(E (x) F) = res_t(c(E; t), c(F; -t))``, taken with formal degrees ``r, q``."""
    _check_pair(E, F)
    A = chern_polynomial(E, "t")
    B = _negate_var(chern_polynomial(F, "t"))
    return resultant_sylvester(A, B, degrees=(E.rank, F.rank))


# -- Newton's identities and the Chern character ------------------------------


def power_sums_from_elementary(e: Sequence, n: int) -> list:
    """``[p_1..p_n]`` from ``[e_1, e_2, ...]`` (missing ``e_k`` are zero)."""
    e = list(e)
    zero = e[0] * 0 if e else 0

    def E(k):
        return e[k - 1] if 1 <= k <= len(e) else zero

    p: list = []
    for k in range(1, n + 1):
        acc = (-1) ** (k - 1) * k * E(k)
        for i in range(1, min(k - 1, len(e)) + 1):
            term = E(i) * p[k - i - 1]
            acc = acc + term if i % 2 else acc - term
        p.append(acc)
    return p


def elementary_from_power_sums(p: Sequence, n: int) -> list:
    """``[e_1..e_n]`` from ``[p_1, p_2, ...]`` via ``k e_k = sum (-1)^(i-1) e_(k-i) p_i``."""
    p = list(p)
    zero = p[0] * 0 if p else 0

    def P(i):
        return p[i - 1] if 1 <= i <= len(p) else zero

    e: list = [zero + 1]
    for k in range(1, n + 1):
        acc = zero
        for i in range(1, k + 1):
            pi = P(i)
            if isinstance(pi, Polynomial) and not pi:
                continue
            term = e[k - i] * pi
            acc = acc + term if i % 2 else acc - term
        e.append(acc / k if isinstance(acc, Polynomial) else Fraction(acc) / k)
    return e[1:]


def tensor_chern_character(E: ChernVector, F: ChernVector, max_degree: int | None = None) -> TotalClass:
    """Baseline via ``ch(E (x) F) = ch(E) ch(F)``.

    In power sums this reads ``p_m(E (x) F) = sum_i binom(m, i) p_i(E) p_(m-i)(F)``
    with ``p_0 = rank``, which keeps the intermediate data integral.
    ``max_degree`` stops the computation early (default ``r*q``).
    """
    _check_pair(E, F)
    n = E.rank * F.rank
    top = n if max_degree is None else min(n, max_degree)
    ctx = E.ctx
    pE = [ctx.constant(E.rank)] + power_sums_from_elementary(E.classes, top)
    pF = [ctx.constant(F.rank)] + power_sums_from_elementary(F.classes, top)
    p_tensor = []
    for m in range(1, top + 1):
        acc = ctx.zero()
        for i in range(m + 1):
            acc = acc + comb(m, i) * (pE[i] * pF[m - i])
        p_tensor.append(acc)
    e = elementary_from_power_sums(p_tensor, top)
    return TotalClass((ctx.one(), *e))


TENSOR_METHODS = {
    "companion": tensor_companion,
    "resultant": tensor_resultant,
    "resultant-sym": tensor_resultant_symmetric,
    "resultant-monic": tensor_resultant_monic,
    "chern-character": tensor_chern_character,
}


# -- second exterior and symmetric powers --------------------------------------


def _wedge2_matrix(E: ChernVector, half_s) -> PolyMatrix:
    r = E.rank
    d = d_coefficients(E, half_s)
    ctx = E.ctx

    def dbar(k):
        return d[k] if 0 <= k <= r else ctx.zero()

    return PolyMatrix([[dbar(2 * i - j) for j in range(1, r)] for i in range(1, r)], ctx)


def wedge2_C(E: ChernVector, s=None) -> Polynomial:
    """``C(wedge^2 E; s) = det([d_(2i-j)(E; s/2)]_{i,j=1..r-1})``.

    ``s`` defaults to the context variable ``s``; pass ``1`` for the total class.
    """
    if s is None:
        s = E.ctx.gen("s")
    half = s * Fraction(1, 2) if isinstance(s, Polynomial) else Fraction(s) / 2
    return determinant(_wedge2_matrix(E, half))


def wedge2(E: ChernVector) -> TotalClass:
    r = E.rank
    return TotalClass.from_polynomial(wedge2_C(E, 1), r * (r - 1) // 2)


def sym2(E: ChernVector) -> TotalClass:
    """``c(S^2 E) = c(E; 2) c(wedge^2 E)``."""
    r = E.rank
    c_at_2 = sum((2**k * E.c(k) for k in range(r + 1)), E.ctx.zero())
    return TotalClass.from_polynomial(c_at_2 * wedge2_C(E, 1), r * (r + 1) // 2)


def wedge_complement(E: ChernVector, s: str = "s") -> Polynomial:
    """``C(wedge^(r-2) E; s) = (-1)^(r(r-1)/2) C(wedge^2 E; -(s + c_1))``."""
    r = E.rank
    if r < 2:
        raise RankError("wedge^(r-2) needs rank at least 2")
    ctx = E.ctx
    sv = ctx.gen(s)
    c2 = wedge2_C(E, sv)
    dual = poly_substitute(c2, s, -(sv + E.c(1)))
    return dual if (r * (r - 1) // 2) % 2 == 0 else -dual
