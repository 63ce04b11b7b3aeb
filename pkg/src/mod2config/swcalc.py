"""Projected Stiefel-Whitney classes in the truncated ring F2[V_1..V_m]/<V_i^d>.

Only the polynomial summand of the cohomology is modelled: nonvanishing
detected here implies nonvanishing of the actual class, but classes that
vanish here may still be nonzero in the ideal summand.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ParameterError
from .invariants import dickson_upper_formula, k_context
from .polyf2 import (
    Polynomial,
    RingContext,
    geometric_inverse,
    homogeneous_component,
    monomial_coefficient,
    power,
    top_degree,
)

MAX_M = 6


def height(d: int) -> int:
    """Smallest power of two that is >= d; the nilpotency bound for w - 1."""
    if d < 1:
        raise ParameterError("d must be positive")
    return 1 << (d - 1).bit_length()


def v_context(d: int, m: int) -> RingContext:
    return k_context(m, stem="V", cap=d)


def _check(d: int, m: int):
    if d < 2:
        raise ParameterError("d must be >= 2")
    if not 1 <= m <= MAX_M:
        raise ParameterError(f"m={m} outside 1..{MAX_M}")


@dataclass(frozen=True)
class SwImage:
    d: int
    m: int
    power: int
    poly: Polynomial
    kind: str  # "total" or "dual"

    def component(self, n: int) -> Polynomial:
        return homogeneous_component(self.poly, n)

    @property
    def max_degree(self) -> int:
        """Degree of (V_1..V_m)^(d-1), the top of the truncated ring."""
        return (self.d - 1) * ((1 << self.m) - 1)


@lru_cache(maxsize=None)
def total_class(d: int, m: int) -> Polynomial:
    ctx = v_context(d, m)
    w = ctx.one()
    for r in range(m):
        w = w + dickson_upper_formula(m, r, ctx)
    return w


def total_class_image(d: int, m: int) -> SwImage:
    """1 + sum_r D_{m,r}, each Dickson class written in the V variables."""
    _check(d, m)
    return SwImage(d, m, 1, total_class(d, m), "total")


@lru_cache(maxsize=None)
def _whitney_power(d: int, m: int, p: int) -> Polynomial:
    return power(total_class(d, m), p)


def whitney_power(d: int, m: int, p: int) -> SwImage:
    """Total class of the p-fold Whitney sum, i.e. w^p."""
    _check(d, m)
    if p < 0:
        raise ParameterError("power must be nonnegative")
    return SwImage(d, m, p, _whitney_power(d, m, p % height(d)), "total")


def dual_exponent(d: int, p: int) -> int:
    """Exponent e with w^e the inverse of w^p (w^height == 1)."""
    h = height(d)
    return (h - p % h) % h


def dual_image(d: int, m: int, p: int = 1) -> SwImage:
    """Dual class of the p-fold Whitney sum: w^(height - p)."""
    _check(d, m)
    if p < 1:
        raise ParameterError("power must be >= 1")
    return SwImage(d, m, p, _whitney_power(d, m, dual_exponent(d, p)), "dual")


def dual_by_inversion(d: int, m: int, p: int = 1) -> SwImage:
    """Same class as :func:`dual_image`, computed by inverting w^p directly."""
    _check(d, m)
    ctx = v_context(d, m)
    wp = _whitney_power(d, m, p % height(d))
    inv = geometric_inverse(Polynomial(wp.terms, ctx))
    return SwImage(d, m, p, inv, "dual")


def top_nonzero_degree(img: SwImage):
    """Largest positive degree with a nonzero component, None when poly == 1."""
    t = top_degree(img.poly)
    if t is None or t == 0:
        return None
    return t


def witness_coefficient(img: SwImage, witness, degree: int | None = None) -> int:
    """Coefficient of a witness monomial, optionally inside a given degree."""
    if isinstance(witness, Polynomial):
        (witness,) = witness.terms
    witness = tuple(witness)
    if degree is not None and img.poly.ctx.degree(witness) != degree:
        return 0
    return monomial_coefficient(img.poly, witness)


def components(img: SwImage) -> dict:
    """Nonzero homogeneous components keyed by degree (ascending)."""
    out: dict = {}
    deg = img.poly.ctx.degree
    for t in img.poly.terms:
        out.setdefault(deg(t), set()).add(t)
    ctx = img.poly.ctx
    return {n: Polynomial(frozenset(ts), ctx) for n, ts in sorted(out.items())}
