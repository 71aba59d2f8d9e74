"""Resultants of univariate polynomials with polynomial coefficients.

Two routes: the Sylvester determinant, and for a monic second argument the
determinant of a matrix polynomial in the companion-type matrix.  Coefficients
are indexed from the top, ``A = a_0 t^r + a_1 t^(r-1) + ... + a_r``, in the
helpers below; :class:`UnivariateView` stores them ascending.
"""

from __future__ import annotations

from .polymat import PolyMatrix, companion_lambda, determinant, matrix_poly_horner
from .ring import Polynomial, UnivariateView, as_univariate

__all__ = [
    "DegenerateInputError",
    "NotMonicError",
    "sylvester_matrix",
    "resultant_sylvester",
    "resultant_companion",
    "resultant",
]


class DegenerateInputError(ValueError):
    pass


class NotMonicError(ValueError):
    pass


def _top_down(view: UnivariateView, degree: int | None) -> list[Polynomial]:
    """Coefficients ``[a_0, ..., a_r]`` with ``a_0`` the (formal) leading one."""
    d = view.degree if degree is None else degree
    if d < view.degree:
        raise DegenerateInputError(f"formal degree {d} below actual degree {view.degree}")
    return [view.coefficient(d - k) for k in range(d + 1)]


def _check_pair(A: UnivariateView, B: UnivariateView):
    if A.main_var != B.main_var:
        raise ValueError(f"main variables differ: {A.main_var} vs {B.main_var}")
    if A.ctx != B.ctx:
        raise ValueError("coefficient contexts differ")


def sylvester_matrix(
    A: UnivariateView, B: UnivariateView, degrees: tuple[int, int] | None = None
) -> PolyMatrix:
    """``(r+q) x (r+q)`` Sylvester matrix.

    Columns ``0..q-1`` hold ``a_0..a_r`` shifted down one row per column,
    columns ``q..q+r-1`` hold ``b_0..b_q`` the same way.  ``degrees`` overrides
    the actual degrees with formal ones (leading coefficients may then vanish).
    """
    _check_pair(A, B)
    r, q = (A.degree, B.degree) if degrees is None else degrees
    if r < 1 or q < 1:
        raise DegenerateInputError(f"Sylvester matrix needs positive degrees, got {r} and {q}")
    a = _top_down(A, r)
    b = _top_down(B, q)
    n = r + q
    ctx = A.ctx
    rows = [[ctx.zero()] * n for _ in range(n)]
    for j in range(q):
        for k, c in enumerate(a):
            rows[j + k][j] = c
    for j in range(r):
        for k, c in enumerate(b):
            rows[j + k][q + j] = c
    return PolyMatrix(rows, ctx)


def resultant_sylvester(
    A: UnivariateView, B: UnivariateView, degrees: tuple[int, int] | None = None
) -> Polynomial:
    """``res(A, B)`` as the determinant of the Sylvester matrix.

    A constant argument follows the root-product convention:
    ``res(A, b) = b**deg(A)`` and ``res(a, B) = a**deg(B)``.
    """
    _check_pair(A, B)
    r, q = (A.degree, B.degree) if degrees is None else degrees
    if r <= 0 and q <= 0:
        raise DegenerateInputError("resultant of two constants is undefined")
    if q == 0:
        return B.coefficient(0) ** r
    if r == 0:
        return A.coefficient(0) ** q
    return determinant(sylvester_matrix(A, B, (r, q)))


def resultant_companion(A: UnivariateView, B: UnivariateView) -> Polynomial:
    """``res(A, B) = det(sum_k (-1)^k a_k Lambda(b)^(r-k))`` for monic ``B``."""
    _check_pair(A, B)
    q = B.degree
    if q < 1:
        raise DegenerateInputError("second argument must have positive degree")
    lead = B.leading
    if lead != 1:
        raise NotMonicError(f"second argument must be monic, leading coefficient is {lead}")
    b = _top_down(B, None)
    lam = companion_lambda(b[1:])
    if A.degree < 0:
        return A.ctx.zero()
    a = _top_down(A, None)
    signed = [c if k % 2 == 0 else -c for k, c in enumerate(a)]
    return determinant(matrix_poly_horner(signed, lam))


def resultant(a: Polynomial, b: Polynomial, var: str, method: str = "sylvester") -> Polynomial:
    """Resultant of two polynomials with respect to ``var``."""
    A, B = as_univariate(a, var), as_univariate(b, var)
    if method == "sylvester":
        return resultant_sylvester(A, B)
    if method == "companion":
        return resultant_companion(A, B)
    raise ValueError(f"unknown resultant method {method!r}")
