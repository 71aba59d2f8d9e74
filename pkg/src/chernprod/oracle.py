"""Splitting-principle ground truth.

Products over formal Chern roots are expanded and then rewritten in the
elementary symmetric functions of each root group with Gauss's algorithm:
take the lex-leading monomial ``a^lam`` (``lam`` non-increasing), subtract
``coeff * prod e_i^(lam_i - lam_(i+1))``, repeat.  Only dominant monomials
(non-increasing exponent vectors) are tracked -- a symmetric polynomial is
determined by them, and the subtraction keeps symmetry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import flint

from .chern import TotalClass
from .ring import Context, Polynomial, poly_substitute

__all__ = [
    "AsymmetryError",
    "OracleSizeError",
    "ReductionError",
    "RootSystem",
    "ORACLE_MAX_RANK",
    "oracle_context",
    "root_system",
    "expand_construction",
    "symmetric_reduce",
    "construction_rank",
    "oracle_chern",
]

ORACLE_MAX_RANK = 21


class AsymmetryError(ValueError):
    pass


class OracleSizeError(ValueError):
    pass


class ReductionError(RuntimeError):
    pass


@dataclass(frozen=True)
class RootSystem:
    """Root groups and the variables that stand for their elementary symmetric functions."""

    ctx: Context
    groups: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]

    def __post_init__(self):
        seen: set[str] = set()
        for roots, targets in self.groups:
            if len(roots) != len(targets):
                raise ValueError("each root group needs one target variable per root")
            if seen & set(roots):
                raise ValueError("root groups must be disjoint")
            seen |= set(roots)
            for name in roots + targets:
                self.ctx.index(name)


def oracle_context(r: int, q: int = 0) -> Context:
    roots = [f"a{i}" for i in range(1, r + 1)] + [f"b{j}" for j in range(1, q + 1)]
    return Context(tuple(roots) + Context.standard(r, q).names)


def root_system(r: int, q: int = 0) -> RootSystem:
    groups = [(tuple(f"a{i}" for i in range(1, r + 1)), tuple(f"x{i}" for i in range(1, r + 1)))]
    if q:
        groups.append((tuple(f"b{j}" for j in range(1, q + 1)), tuple(f"y{j}" for j in range(1, q + 1))))
    return RootSystem(oracle_context(r, q), tuple(groups))


def construction_rank(kind: str, r: int, q: int | None = None, k: int | None = None) -> int:
    if kind == "tensor":
        return r * (q or 0)
    if kind == "wedge2":
        return comb(r, 2)
    if kind == "sym2":
        return comb(r + 1, 2)
    if kind == "wedge_k":
        return comb(r, k)
    raise ValueError(f"unknown construction {kind!r}")


def expand_construction(
    kind: str,
    e_roots: list[Polynomial],
    f_roots: list[Polynomial] | None = None,
    k: int | None = None,
) -> Polynomial:
    """Expanded product over Chern roots.

    ``tensor``: ``prod_{i,j} (1 + a_i t + b_j t)``; ``wedge2``: ``prod_{i<j} (1 + a_i + a_j)``;
    ``sym2``: ``prod_{i<=j} (1 + a_i + a_j)``; ``wedge_k``: ``prod_{|I|=k} (1 + sum_I a_i)``.
    """
    if not e_roots:
        raise ValueError("need at least one root")
    ctx = e_roots[0].ctx
    one = ctx.one()
    if kind == "tensor":
        if not f_roots:
            raise ValueError("tensor needs both root lists")
        t = ctx.gen("t")
        factors = [one + a * t + b * t for a in e_roots for b in f_roots]
    elif kind == "wedge2":
        factors = [one + a + b for a, b in itertools.combinations(e_roots, 2)]
    elif kind == "sym2":
        factors = [one + a + b for a, b in itertools.combinations_with_replacement(e_roots, 2)]
    elif kind == "wedge_k":
        if k is None or not 0 <= k <= len(e_roots):
            raise ValueError(f"wedge_k needs 0 <= k <= {len(e_roots)}, got {k}")
        factors = [sum(sub, one) for sub in itertools.combinations(e_roots, k)]
    else:
        raise ValueError(f"unknown construction {kind!r}")
    acc = one
    for f in factors:
        acc = acc * f
    return acc


@lru_cache(maxsize=4096)
def _dominant_expansion(nroots: int, mu: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Dominant terms of ``prod_i e_i(a_1..a_n)^mu_i`` as integer coefficients."""
    fctx = flint.fmpz_mpoly_ctx.get(tuple(f"u{i}" for i in range(nroots)), "lex")
    prod = fctx.constant(1)
    for i, m in enumerate(mu, start=1):
        if m:
            e_i = fctx.from_dict(
                {tuple(1 if j in sub else 0 for j in range(nroots)): 1
                 for sub in itertools.combinations(range(nroots), i)}
            )
            prod *= e_i**m
    return tuple(
        (tuple(exps), int(c))
        for exps, c in prod.terms()
        if all(exps[j] >= exps[j + 1] for j in range(nroots - 1))
    )


def _check_symmetric(p: Polynomial, roots: tuple[str, ...]):
    ctx = p.ctx
    positional = {i: i for i in range(len(ctx.names))}
    for u, v in zip(roots, roots[1:]):
        # move into a context where u and v trade places, then read back by position
        names = [v if n == u else u if n == v else n for n in ctx.names]
        swapped = p.raw.project_to_context(flint.fmpq_mpoly_ctx.get(tuple(names), "lex"))
        if swapped.project_to_context(ctx.flint, mapping=positional) != p.raw:
            raise AsymmetryError(f"polynomial is not symmetric under swapping {u} and {v}")


def _reduce_group(p: Polynomial, roots: tuple[str, ...], targets: tuple[str, ...]) -> Polynomial:
    ctx = p.ctx
    idx = [ctx.index(a) for a in roots]
    n = len(idx)
    # dominant root-monomial -> coefficient (raw poly free of this group's roots)
    split: dict[tuple[int, ...], dict] = {}
    for exps, c in p.raw.terms():
        key = tuple(exps[i] for i in idx)
        if any(key[j] < key[j + 1] for j in range(n - 1)):
            continue
        rest = list(exps)
        for i in idx:
            rest[i] = 0
        split.setdefault(key, {})[tuple(rest)] = c
    fl = ctx.flint
    work = {key: fl.from_dict(d) for key, d in split.items()}
    tgt = [ctx.gen(x).raw for x in targets]
    out = fl.constant(0)
    last = None
    while work:
        lead = max(work)
        if last is not None and not lead < last:
            raise ReductionError(f"leading exponent {lead} did not decrease below {last}")
        last = lead
        coeff = work[lead]
        mu = tuple(lead[j] - (lead[j + 1] if j + 1 < n else 0) for j in range(n))
        mono = fl.constant(1)
        for g, m in zip(tgt, mu):
            if m:
                mono *= g**m
        out += coeff * mono
        for key, c in _dominant_expansion(n, mu):
            cur = work.get(key)
            new = -c * coeff if cur is None else cur - c * coeff
            if new.is_zero():
                work.pop(key, None)
            else:
                work[key] = new
        if lead in work:
            raise ReductionError(f"leading term {lead} survived its own subtraction")
    return Polynomial(ctx, out)


def symmetric_reduce(p: Polynomial, system: RootSystem) -> Polynomial:
    """Rewrite ``p`` in the elementary symmetric functions of each root group.

    Groups are handled in order; later groups' roots ride along as coefficients.
    """
    p = p.to_context(system.ctx)
    for roots, targets in system.groups:
        _check_symmetric(p, roots)
        p = _reduce_group(p, roots, targets)
    return p


@lru_cache(maxsize=256)
def oracle_chern(kind: str, r: int, q: int | None = None, k: int | None = None) -> TotalClass:
    """Ground-truth total class in the standard context ``x.., y.., s, t``.

    ``kind`` is one of ``tensor`` (needs ``q``), ``wedge2``, ``sym2``, ``wedge_k`` (needs ``k``).
    """
    if r < 1 or (kind == "tensor" and (q is None or q < 1)):
        raise ValueError("ranks must be positive")
    if kind == "wedge_k" and (k is None or not 0 <= k <= r):
        raise ValueError(f"wedge_k needs 0 <= k <= {r}, got {k}")
    rank = construction_rank(kind, r, q, k)
    if rank > ORACLE_MAX_RANK:
        raise OracleSizeError(
            f"{kind} of rank {rank} exceeds the oracle limit {ORACLE_MAX_RANK}; reduce the ranks"
        )
    qq = q if kind == "tensor" else 0
    system = root_system(r, qq)
    ctx = system.ctx
    a = [ctx.gen(f"a{i}") for i in range(1, r + 1)]
    b = [ctx.gen(f"b{j}") for j in range(1, qq + 1)]
    expanded = expand_construction(kind, a, b or None, k)
    if kind == "tensor":
        expanded = poly_substitute(expanded, "t", 1)
    reduced = symmetric_reduce(expanded, system)
    return TotalClass.from_polynomial(reduced.to_context(Context.standard(r, qq)), rank)
