"""Mod-2 invariant theory: Mui, Dickson and upper-triangular invariants.

Three polynomial alphabets appear here, each in its own ring context:

* ``x``: ambient variables x_1..x_m, all of degree 1;
* ``k``: upper-triangular invariants k_j, with deg k_j = 2^(j-1);
* ``y``: restriction variables, same shape as ``x``.

The ``k`` alphabet doubles as the ``V`` alphabet of the truncated ring
(same exponents, different stem).
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import ParameterError
from .polyf2 import Polynomial, RingContext, compose, linear_substitute, mul

MAX_M_LINEAR = 8
MAX_M_BRUTE = 5
MAX_M_RECURRENCE = 16


def x_context(m: int, stem: str = "x") -> RingContext:
    return RingContext.make(m, stem=stem)


def k_context(m: int, stem: str = "k", cap=None) -> RingContext:
    return RingContext.make(m, degrees=[1 << j for j in range(m)], cap=cap, stem=stem)


def _check_m(m: int, bound: int):
    if not 1 <= m <= bound:
        raise ParameterError(f"m={m} outside 1..{bound}")


def _linear(ctx: RingContext, mask: int) -> Polynomial:
    """Sum of variables whose (0-based) index bit is set in ``mask``."""
    terms = []
    for j in range(ctx.var_count):
        if mask >> j & 1:
            e = [0] * ctx.var_count
            e[j] = 1
            terms.append(tuple(e))
    return Polynomial.from_terms(terms, ctx)


def _product_over_span(ctx: RingContext, lead: int, span: list) -> Polynomial:
    """prod over v in span(span) of (z_lead + v); indices are 0-based."""
    result = ctx.one()
    for coeffs in itertools.product((0, 1), repeat=len(span)):
        mask = 1 << lead
        for c, j in zip(coeffs, span):
            if c:
                mask ^= 1 << j
        result = mul(result, _linear(ctx, mask))
    return result


@lru_cache(maxsize=None)
def mui_h(m: int, i: int) -> Polynomial:
    """h_i = prod over v in span{x_m, .., x_(m-i+2)} of (x_(m-i+1) + v)."""
    _check_m(m, MAX_M_LINEAR)
    if not 1 <= i <= m:
        raise ParameterError(f"i={i} outside 1..{m}")
    ctx = x_context(m)
    lead = m - i  # x_(m-i+1), 0-based
    span = list(range(lead + 1, m))
    return _product_over_span(ctx, lead, span)


@lru_cache(maxsize=None)
def restriction_v(m: int, r: int) -> Polynomial:
    """Restriction image v_{m,r} in the y variables.

    Product over lambda in F2^(r-1) of
    (lambda_m y_m + .. + lambda_(m-r+2) y_(m-r+2) + y_(m-r+1)); the lead
    coefficient is fixed at 1.
    """
    _check_m(m, MAX_M_LINEAR)
    if not 1 <= r <= m:
        raise ParameterError(f"r={r} outside 1..{m}")
    ctx = x_context(m, stem="y")
    lead = m - r
    span = list(range(m - 1, lead, -1))
    return _product_over_span(ctx, lead, span)


def reversal_matrix(m: int) -> list:
    """Anti-diagonal permutation x_i -> x_(m+1-i)."""
    return [[1 if r + c == m - 1 else 0 for c in range(m)] for r in range(m)]


@lru_cache(maxsize=None)
def k_in_x(m: int, j: int) -> Polynomial:
    """k_j written in the x variables: the reversal image of h_j."""
    return linear_substitute(mui_h(m, j), reversal_matrix(m))


@lru_cache(maxsize=None)
def dickson_bruteforce(m: int, r: int) -> Polynomial:
    """Coefficient of T^(2^r) in prod over all v in F2^m of (T + v).

    The product is accumulated one coordinate at a time: after absorbing
    x_1..x_j it runs over every vector of span{x_1..x_j}, and the factors
    for the next coordinate are the same linear forms shifted by x_(j+1),
    obtained by substituting T -> T + x_(j+1).
    """
    _check_m(m, MAX_M_BRUTE)
    if not 0 <= r < m:
        raise ParameterError(f"r={r} outside 0..{m - 1}")
    ctx = RingContext.make(m + 1)  # x_1..x_m, then T
    t_idx = m
    prod = _linear(ctx, 1 << t_idx)  # the single factor T (v = 0)
    for j in range(m):
        shift = [[0] * (m + 1) for _ in range(m + 1)]
        for a in range(m + 1):
            shift[a][a] = 1
        shift[j][t_idx] = 1  # column of T gets x_(j+1) added
        prod = mul(prod, linear_substitute(prod, shift))
    target = 1 << r
    xctx = x_context(m)
    coeff = [t[:m] for t in prod.terms if t[t_idx] == target]
    return Polynomial.from_terms(coeff, xctx)


@lru_cache(maxsize=None)
def dickson_recurrence(m: int, r: int) -> Polynomial:
    """d_{m,r} in the k alphabet via d_{m,r} = d_{m-1,r} k_m + d_{m-1,r-1}^2."""
    _check_m(m, MAX_M_RECURRENCE)
    if not 0 <= r < m:
        raise ParameterError(f"r={r} outside 0..{m - 1}")
    return _recurrence(m, r)


@lru_cache(maxsize=None)
def _recurrence(m: int, r: int) -> Polynomial:
    ctx = k_context(m)
    if r == m:
        return ctx.one()
    if r < 0:
        return ctx.zero()
    if m == 1:
        return ctx.var(1)  # d_{1,0} = k_1
    keep = _embed(_recurrence(m - 1, r), ctx)
    square = _embed(_recurrence(m - 1, r - 1), ctx)
    return mul(keep, ctx.var(m)) + mul(square, square)


def _embed(p: Polynomial, ctx: RingContext) -> Polynomial:
    """Pad exponents of a k-polynomial on fewer variables with zeros."""
    pad = ctx.var_count - p.ctx.var_count
    return Polynomial(frozenset(t + (0,) * pad for t in p.terms), ctx)


def upper_formula_exponents(m: int, r: int):
    """Yield the exponent vector of each k[J] summand, J = (j_1 < .. < j_r).

    Variables before j_1 get exponent 2^r, those between j_1 and j_2 get
    2^(r-1), and so on down to exponent 1 after j_r; members of J get 0.
    """
    for J in itertools.combinations(range(m), r):
        exps = []
        level = r
        for idx in range(m):
            if level > 0 and idx == J[r - level]:
                exps.append(0)
                level -= 1
            else:
                exps.append(1 << level)
        yield tuple(exps)


@lru_cache(maxsize=None)
def dickson_upper_formula(m: int, r: int, ctx: RingContext | None = None) -> Polynomial:
    """d_{m,r} as the sum of the k[J] monomials (closed upper-triangular formula)."""
    _check_m(m, MAX_M_RECURRENCE)
    if not 0 <= r < m:
        raise ParameterError(f"r={r} outside 0..{m - 1}")
    if ctx is None:
        ctx = k_context(m)
    return Polynomial.from_terms(upper_formula_exponents(m, r), ctx)


def k_to_x(p: Polynomial) -> Polynomial:
    """Expand a k-alphabet polynomial into the x variables."""
    m = p.ctx.var_count
    images = [k_in_x(m, j) for j in range(1, m + 1)]
    return compose(p, images, x_context(m))


def dickson_degree(m: int, r: int) -> int:
    return (1 << m) - (1 << r)
