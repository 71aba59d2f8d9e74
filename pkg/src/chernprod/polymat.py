"""Square matrices with polynomial entries."""

from __future__ import annotations

from typing import Sequence

from .ring import Context, InexactDivisionError, Polynomial

__all__ = [
    "PolyMatrix",
    "DimensionError",
    "DeterminantError",
    "companion_lambda",
    "matrix_poly_horner",
    "determinant",
    "det_bareiss",
    "det_cofactor",
]


class DimensionError(ValueError):
    pass


class DeterminantError(ArithmeticError):
    """An exact division inside Bareiss elimination failed (arithmetic bug)."""


class PolyMatrix:
    """Immutable dense ``n x n`` matrix over a polynomial context."""

    __slots__ = ("ctx", "rows")

    def __init__(self, rows: Sequence[Sequence], ctx: Context | None = None):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError("matrix must be square")
        if ctx is None:
            ctx = next((e.ctx for r in rows for e in r if isinstance(e, Polynomial)), None)
            if ctx is None:
                raise DimensionError("cannot infer a context from scalar entries; pass ctx")
        self.ctx = ctx
        self.rows = tuple(
            tuple(e if isinstance(e, Polynomial) else ctx.constant(e) for e in r) for r in rows
        )
        for r in self.rows:
            for e in r:
                if e.ctx != ctx:
                    raise ValueError("all entries must share one context")

    @classmethod
    def identity(cls, n: int, ctx: Context) -> "PolyMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ctx)

    @classmethod
    def zeros(cls, n: int, ctx: Context) -> "PolyMatrix":
        return cls([[0] * n for _ in range(n)], ctx)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def _check(self, other: "PolyMatrix"):
        if other.n != self.n:
            raise DimensionError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ctx)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        return PolyMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ctx)

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix([[-a for a in r] for r in self.rows], self.ctx)

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix([[c * a for a in r] for r in self.rows], self.ctx)

    def add_scalar(self, c) -> "PolyMatrix":
        """``self + c*I``."""
        return PolyMatrix(
            [[a + c if i == j else a for j, a in enumerate(r)] for i, r in enumerate(self.rows)], self.ctx
        )

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        n = self.n
        zero = self.ctx.zero()
        out = [[zero] * n for _ in range(n)]
        # skip zero entries: Lambda-type factors are mostly empty
        cols = [[(k, other.rows[k][j]) for k in range(n) if other.rows[k][j]] for j in range(n)]
        for i, row in enumerate(self.rows):
            for j in range(n):
                acc = zero
                for k, b in cols[j]:
                    a = row[k]
                    if a:
                        acc = acc + a * b
                out[i][j] = acc
        return PolyMatrix(out, self.ctx)

    __mul__ = __matmul__

    def __str__(self):
        return "[" + ",\n ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.rows) + "]"

    def __repr__(self):
        return f"PolyMatrix({self.n}x{self.n})"


def companion_lambda(first_column: Sequence[Polynomial]) -> PolyMatrix:
    """The ``q x q`` matrix with ``first_column`` in column 0 and ``-1`` on the superdiagonal."""
    q = len(first_column)
    if q == 0:
        raise DimensionError("companion matrix needs a nonempty first column")
    ctx = first_column[0].ctx
    rows = [[0] * q for _ in range(q)]
    for i, c in enumerate(first_column):
        rows[i][0] = c
        if i + 1 < q:
            rows[i][i + 1] = -1
    return PolyMatrix(rows, ctx)


def matrix_poly_horner(coeffs: Sequence, M: PolyMatrix) -> PolyMatrix:
    """``sum(coeffs[i] * M**(r-i))`` for ``r = len(coeffs)-1``, by Horner's rule.

    ``coeffs[0]`` multiplies the highest power.
    """
    if not coeffs:
        return PolyMatrix.zeros(M.n, M.ctx)
    S = PolyMatrix.identity(M.n, M.ctx).scale(coeffs[0])
    for k in coeffs[1:]:
        S = (S @ M).add_scalar(k)
    return S


def det_cofactor(M: PolyMatrix) -> Polynomial:
    """Laplace expansion along the first row."""
    n = M.n
    if n == 0:
        return M.ctx.one()
    if n == 1:
        return M[0, 0]
    if n == 2:
        return M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    total = M.ctx.zero()
    for j in range(n):
        a = M[0, j]
        if not a:
            continue
        minor = PolyMatrix([[M[i, k] for k in range(n) if k != j] for i in range(1, n)], M.ctx)
        term = a * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_bareiss(M: PolyMatrix) -> Polynomial:
    """Fraction-free Gaussian elimination; every division is exact in the ring."""
    n = M.n
    if n == 0:
        return M.ctx.one()
    a = [list(r) for r in M.rows]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return M.ctx.zero()
        piv = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            lead = rowi[k]
            for j in range(k + 1, n):
                num = piv * rowi[j]
                if lead and rowk[j]:
                    num = num - lead * rowk[j]
                if prev is not None and num:
                    try:
                        num = num.exact_div(prev)
                    except InexactDivisionError as exc:
                        raise DeterminantError(f"Bareiss step {k}: {exc}") from None
                rowi[j] = num
            rowi[k] = M.ctx.zero()
        prev = piv
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def determinant(M: PolyMatrix, method: str = "auto") -> Polynomial:
    """Exact determinant: cofactor expansion up to 3x3, Bareiss above."""
    if method == "auto":
        method = "cofactor" if M.n <= 3 else "bareiss"
    if method == "cofactor":
        return det_cofactor(M)
    if method == "bareiss":
        return det_bareiss(M)
    raise ValueError(f"unknown determinant method {method!r}")
