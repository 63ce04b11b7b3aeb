"""Membership of Dickson-subring elements in the truncation ideal <V_i^q>.

Elements of the Dickson subring are written as polynomials in formal
symbols Q0..Q(n-1) (``Qr`` has V-degree 2^n - 2^r).  Membership is decided
by expanding into the V variables with every exponent capped at q; the
element lies in the ideal iff nothing survives.

Degree slices of the ideal are kernels of that expansion map, found by
GF(2) elimination on int bitsets.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import limits
from .errors import ParameterError, ResourceError
from .invariants import dickson_upper_formula, k_context
from .polyf2 import Polynomial, RingContext, compose, parse

MAX_N = 6
DEFAULT_MAX_DEGREE = 64


def q_context(n: int) -> RingContext:
    if not 1 <= n <= MAX_N:
        raise ParameterError(f"n={n} outside 1..{MAX_N}")
    degrees = [(1 << n) - (1 << r) for r in range(n)]
    return RingContext.make(n, degrees=degrees, stem="Q", index_base=0)


def v_context(n: int, q) -> RingContext:
    if q is not None and q < 1:
        raise ParameterError("truncation q must be >= 1")
    return k_context(n, stem="V", cap=q)


def parse_q(text: str, n: int) -> Polynomial:
    """Parse "Q0^2 + Q1^3"-style text."""
    return parse(text, q_context(n))


@lru_cache(maxsize=None)
def _images(n: int, q):
    ctx = v_context(n, q)
    return tuple(dickson_upper_formula(n, r, ctx) for r in range(n))


def expand_q(p: Polynomial, q=None) -> Polynomial:
    """Substitute each Qr by the Dickson class D_{n,r}; q=None means no cap."""
    n = p.ctx.var_count
    if p.ctx != q_context(n):
        raise ParameterError("expected a polynomial in the Q symbols")
    return compose(p, list(_images(n, q)), v_context(n, q))


def in_truncation_ideal(p: Polynomial, q: int) -> bool:
    return not expand_q(p, q).terms


def q_monomials(n: int, degree: int) -> list:
    """Exponent tuples (e_0..e_(n-1)) with sum e_r (2^n - 2^r) == degree, lex order."""
    degs = [(1 << n) - (1 << r) for r in range(n)]
    out = []

    def rec(i, left, acc):
        if i == n:
            if left == 0:
                out.append(tuple(acc))
            return
        for e in range(left // degs[i] + 1):
            acc.append(e)
            rec(i + 1, left - e * degs[i], acc)
            acc.pop()

    rec(0, degree, [])
    return sorted(out)


def slice_degrees(n: int, max_degree: int) -> list:
    """Degrees in 1..max_degree carrying at least one Q-monomial."""
    return [g for g in range(1, max_degree + 1) if q_monomials(n, g)]


def _expansion_rows(n: int, q: int, monos: list):
    """Bitset rows: bit j set iff V-monomial j occurs in the expansion."""
    ctx = q_context(n)
    index: dict = {}
    rows = []
    for e in monos:
        image = expand_q(ctx.monomial(e), q)
        bits = 0
        for t in image.terms:
            j = index.setdefault(t, len(index))
            bits |= 1 << j
        rows.append(bits)
    return rows


def _kernel_masks(rows: list) -> list:
    """Basis of {c : xor of rows[i] over bits i of c == 0}, as int masks.

    The basis is returned in reduced echelon form over the row labels so
    the output does not depend on elimination order.
    """
    pivots: dict = {}  # pivot bit -> (row value, label mask)
    kernel = []
    for i, r in enumerate(rows):
        label = 1 << i
        while r:
            top = r.bit_length() - 1
            if top not in pivots:
                pivots[top] = (r, label)
                break
            pr, pl = pivots[top]
            r ^= pr
            label ^= pl
        else:
            kernel.append(label)
    return _rref(kernel)


def _rref(vectors: list) -> list:
    """Reduced echelon basis (pivot = highest bit), sorted by pivot ascending."""
    basis: dict = {}  # pivot bit -> vector, other pivot bits cleared
    for v in vectors:
        for p, b in basis.items():
            if v >> p & 1:
                v ^= b
        if not v:
            continue
        top = v.bit_length() - 1
        for p in basis:
            if basis[p] >> top & 1:
                basis[p] ^= v
        basis[top] = v
    return [basis[p] for p in sorted(basis)]


def _mask_to_poly(mask: int, monos: list, n: int) -> Polynomial:
    terms = [monos[i] for i in range(len(monos)) if mask >> i & 1]
    return Polynomial.from_terms(terms, q_context(n))


def _check_degree(degree: int):
    if degree > DEFAULT_MAX_DEGREE * 4 or degree < 0:
        raise ParameterError(f"degree {degree} outside supported range")


def ideal_kernel_in_degree(n: int, q: int, degree: int) -> list:
    """GF(2) basis of the degree slice of I(Q, q) inside the Q-monomial span."""
    _check_degree(degree)
    monos = q_monomials(n, degree)
    if len(monos) > limits.max_grid():
        raise ResourceError(f"{len(monos)} Q-monomials exceed grid guard")
    if not monos:
        return []
    rows = _expansion_rows(n, q, monos)
    return [_mask_to_poly(k, monos, n) for k in _kernel_masks(rows)]


@dataclass(frozen=True)
class GenerationCheck:
    holds: bool
    counterexample: Polynomial | None = None
    degree: int | None = None
    # per-degree (kernel dimension, member monomial count)
    slices: tuple = ()


def monomial_generation_check(n: int, q: int, max_degree: int = DEFAULT_MAX_DEGREE) -> GenerationCheck:
    """Test whether I(Q, q) is spanned by the Q-monomials it contains.

    Any Q-monomial multiple of a member monomial is again a member, so the
    ideal generated by member monomials meets each degree slice in the span
    of the member monomials of that degree.  The claim fails in a degree
    exactly when the kernel there has an element supported off those
    monomials; the first such element (in reduced echelon form, with member
    coordinates cleared) is returned.
    """
    _check_degree(max_degree)
    slices = []
    for g in slice_degrees(n, max_degree):
        monos = q_monomials(n, g)
        if len(monos) > limits.max_grid():
            raise ResourceError(f"{len(monos)} Q-monomials exceed grid guard")
        rows = _expansion_rows(n, q, monos)
        member = 0
        for i, r in enumerate(rows):
            if r == 0:
                member |= 1 << i
        kernel = _kernel_masks(rows)
        slices.append((g, len(kernel), bin(member).count("1")))
        outside = _rref([k & ~member for k in kernel if k & ~member])
        if outside:
            # clearing member coordinates keeps us inside the kernel
            witness = _mask_to_poly(outside[0], monos, n)
            return GenerationCheck(False, witness, g, tuple(slices))
    return GenerationCheck(True, None, None, tuple(slices))
