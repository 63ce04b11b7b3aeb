"""Sparse multivariate polynomials over GF(2) with per-variable truncation.

A polynomial is a frozen set of exponent tuples; the coefficient of every
listed monomial is 1, so addition is symmetric difference.  Each polynomial
carries the :class:`RingContext` it lives in, which fixes the variable
count, the weighted degree of each variable, the per-variable truncation
caps (``V_i^cap = 0``) and an optional total-degree cap.

Large products inside fully truncated rings switch to a dense numpy
kernel; everything else stays sparse.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import limits
from .errors import (
    ContextError,
    InvalidSubstitutionError,
    NotAUnitError,
    ParameterError,
    ResourceError,
    UnsupportedError,
)

Monomial = tuple  # tuple[int, ...]

# exponents are kept below this bound so they fit a 16-bit field
MAX_EXPONENT_CAP = 1 << 16

# products whose naive work exceeds this use the dense kernel when possible
_DENSE_WORK_THRESHOLD = 20_000
_DENSE_MAX_CELLS = 1 << 24


@dataclass(frozen=True)
class RingContext:
    """Ambient ring F2[z_1..z_n] / <z_i^cap_i>, optionally cut at a total degree.

    ``caps`` entries of ``None`` mean the variable is not truncated.
    ``stem`` and ``index_base`` only affect text rendering; an
    ``index_base`` of None (single-variable rings only) drops the index.
    """

    var_count: int
    var_degrees: tuple
    caps: tuple
    degree_cap: int | None = None
    stem: str = "x"
    index_base: int = 1

    def __post_init__(self):
        if self.var_count < 1:
            raise ParameterError("var_count must be positive")
        if len(self.var_degrees) != self.var_count or len(self.caps) != self.var_count:
            raise ParameterError("per-variable data must match var_count")
        if any(g < 1 for g in self.var_degrees):
            raise ParameterError("variable degrees must be positive")
        for c in self.caps:
            if c is not None and not (1 <= c <= MAX_EXPONENT_CAP):
                raise ParameterError(f"truncation cap {c} outside 1..{MAX_EXPONENT_CAP}")
        if self.degree_cap is not None and self.degree_cap < 0:
            raise ParameterError("degree cap must be nonnegative")
        if self.index_base is None and self.var_count != 1:
            raise ParameterError("unindexed names need a single variable")

    @classmethod
    def make(cls, n: int, degrees=None, cap=None, degree_cap=None, stem="x", index_base=1):
        """Convenience constructor; scalar ``cap``/``degrees`` are broadcast."""
        if degrees is None:
            degrees = (1,) * n
        if cap is None or isinstance(cap, int):
            caps = (cap,) * n
        else:
            caps = tuple(cap)
        return cls(n, tuple(degrees), caps, degree_cap, stem, index_base)

    @property
    def fully_truncated(self) -> bool:
        return all(c is not None for c in self.caps)

    def degree(self, mono: Monomial) -> int:
        return sum(e * g for e, g in zip(mono, self.var_degrees))

    def admits(self, mono: Monomial) -> bool:
        for e, c in zip(mono, self.caps):
            if e < 0 or (c is not None and e >= c):
                return False
        if self.degree_cap is not None and self.degree(mono) > self.degree_cap:
            return False
        return True

    def with_stem(self, stem: str, index_base: int | None = None) -> "RingContext":
        base = self.index_base if index_base is None else index_base
        return RingContext(self.var_count, self.var_degrees, self.caps, self.degree_cap, stem, base)

    def with_degree_cap(self, degree_cap: int | None) -> "RingContext":
        return RingContext(self.var_count, self.var_degrees, self.caps, degree_cap, self.stem, self.index_base)

    # constructors for common elements
    def zero(self) -> "Polynomial":
        return Polynomial(frozenset(), self)

    def one(self) -> "Polynomial":
        return Polynomial.from_terms([(0,) * self.var_count], self)

    def var(self, i: int) -> "Polynomial":
        """The i-th variable, counted from ``index_base``."""
        j = i - (self.index_base if self.index_base is not None else 1)
        if not 0 <= j < self.var_count:
            raise ParameterError(f"variable index {i} out of range")
        e = [0] * self.var_count
        e[j] = 1
        return Polynomial.from_terms([tuple(e)], self)

    def monomial(self, exps: Sequence[int]) -> "Polynomial":
        return Polynomial.from_terms([tuple(exps)], self)


def _check_size(n: int):
    if n > limits.max_terms():
        raise ResourceError(f"term count {n} exceeds guard {limits.max_terms()}")


class Polynomial:
    """Immutable GF(2) polynomial: a set of monomials in one ring context."""

    __slots__ = ("terms", "ctx", "_hash")

    def __init__(self, terms: frozenset, ctx: RingContext):
        # callers are trusted to pass reduced terms; use from_terms otherwise
        self.terms = terms
        self.ctx = ctx
        self._hash = None

    @classmethod
    def from_terms(cls, terms: Iterable, ctx: RingContext) -> "Polynomial":
        """Build from raw exponent tuples: duplicates cancel in pairs, then reduce."""
        acc = set()
        for t in terms:
            t = tuple(int(e) for e in t)
            if len(t) != ctx.var_count:
                raise ContextError(f"monomial {t} has wrong length for {ctx.var_count} variables")
            acc ^= {t}
        return cls(frozenset(t for t in acc if ctx.admits(t)), ctx)

    def reduce(self) -> "Polynomial":
        return Polynomial(frozenset(t for t in self.terms if self.ctx.admits(t)), self.ctx)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(sorted_terms(self))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.terms, self.ctx))
        return self._hash

    def __add__(self, other):
        return add(self, other)

    __sub__ = __add__

    def __mul__(self, other):
        return mul(self, other)

    def __pow__(self, n):
        return power(self, n)

    def __repr__(self):
        return f"Polynomial({to_text(self)!r})"

    def __str__(self):
        return to_text(self)

    def is_one(self) -> bool:
        return self.terms == frozenset([(0,) * self.ctx.var_count])


def _same_ctx(p: Polynomial, q: Polynomial) -> RingContext:
    if p.ctx != q.ctx:
        raise ContextError("polynomials live in different ring contexts")
    return p.ctx


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    ctx = _same_ctx(p, q)
    return Polynomial(p.terms ^ q.terms, ctx)


def _dense_shape(ctx: RingContext):
    return tuple(ctx.caps)


def _degree_grid(ctx: RingContext):
    grids = np.indices(_dense_shape(ctx), sparse=True)
    deg = 0
    for g, w in zip(grids, ctx.var_degrees):
        deg = deg + g * w
    return deg


def _to_dense(p: Polynomial) -> np.ndarray:
    arr = np.zeros(_dense_shape(p.ctx), dtype=bool)
    if p.terms:
        idx = np.array(list(p.terms), dtype=np.int64)
        arr[tuple(idx.T)] = True
    return arr


def _from_dense(arr: np.ndarray, ctx: RingContext) -> Polynomial:
    idx = np.argwhere(arr)
    _check_size(len(idx))
    return Polynomial(frozenset(map(tuple, idx.tolist())), ctx)


def _mul_dense(big: Polynomial, small: Polynomial) -> Polynomial:
    ctx = big.ctx
    src = _to_dense(big)
    out = np.zeros_like(src)
    caps = ctx.caps
    for t in small.terms:
        dst_sl = tuple(slice(e, c) for e, c in zip(t, caps))
        src_sl = tuple(slice(0, c - e) for e, c in zip(t, caps))
        out[dst_sl] ^= src[src_sl]
    if ctx.degree_cap is not None:
        out &= _degree_grid(ctx) <= ctx.degree_cap
    return _from_dense(out, ctx)


def _use_dense(ctx: RingContext, work: int) -> bool:
    if not ctx.fully_truncated or work < _DENSE_WORK_THRESHOLD:
        return False
    cells = 1
    for c in ctx.caps:
        cells *= c
    return cells <= _DENSE_MAX_CELLS


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """Product with mod-2 cancellation; terms violating a cap are dropped."""
    ctx = _same_ctx(p, q)
    if not p.terms or not q.terms:
        return ctx.zero()
    if len(p.terms) < len(q.terms):
        p, q = q, p
    if _use_dense(ctx, len(p.terms) * len(q.terms)):
        return _mul_dense(p, q)
    acc: set = set()
    admits = ctx.admits
    plist = list(p.terms)
    for t in q.terms:
        shifted = (tuple(a + b for a, b in zip(s, t)) for s in plist)
        acc ^= {m for m in shifted if admits(m)}
        _check_size(len(acc))
    return Polynomial(frozenset(acc), ctx)


def frobenius(p: Polynomial, factor: int) -> Polynomial:
    """Scale every exponent by ``factor``; equals p**factor when factor is a power of 2."""
    ctx = p.ctx
    out = frozenset(
        m for m in (tuple(e * factor for e in t) for t in p.terms) if ctx.admits(m)
    )
    return Polynomial(out, ctx)


def power(p: Polynomial, n: int) -> Polynomial:
    """p**n as a product of Frobenius images, one per set bit of n."""
    if n < 0:
        raise ParameterError("negative exponent; use geometric_inverse")
    ctx = p.ctx
    result = ctx.one()
    bit = 0
    while n:
        if n & 1:
            result = mul(result, frobenius(p, 1 << bit))
            if not result.terms:
                return result
        n >>= 1
        bit += 1
    return result


def _nilpotency_steps(ctx: RingContext) -> int:
    """Smallest s with a**(2**s) == 0 for every a without constant term."""
    bounds = []
    if ctx.degree_cap is not None:
        # a has degree >= 1, so a^(2^s) has degree >= 2^s
        bounds.append(ctx.degree_cap + 1)
    if ctx.fully_truncated:
        # some exponent of each monomial is >= 1 and gets scaled past its cap
        bounds.append(max(ctx.caps))
    if not bounds:
        raise UnsupportedError("inverse needs a degree cap or truncation on every variable")
    target = min(bounds)
    return max(0, (target - 1).bit_length())


def geometric_inverse(p: Polynomial) -> Polynomial:
    """Inverse of a unit 1 + a.

    The Neumann series sum_{j < 2^s} a^j, with s large enough that a^(2^s)
    vanishes, factors over GF(2) as prod_{i < s} (1 + a^(2^i)); that product
    is what gets evaluated.
    """
    ctx = p.ctx
    const = (0,) * ctx.var_count
    if const not in p.terms:
        raise NotAUnitError("polynomial has no constant term")
    a = Polynomial(p.terms - {const}, ctx)
    one = ctx.one()
    result = one
    for i in range(_nilpotency_steps(ctx)):
        a_pow = frobenius(a, 1 << i)
        if not a_pow.terms:
            break
        result = mul(result, add(one, a_pow))
    return result


def _gf2_rank(rows: list) -> int:
    rank = 0
    rows = list(rows)
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
    return rank


def compose(p: Polynomial, images: Sequence[Polynomial], target: RingContext) -> Polynomial:
    """Substitute variable i of ``p`` by ``images[i]`` (all in ``target``)."""
    if len(images) != p.ctx.var_count:
        raise ContextError("need one image per variable")
    for im in images:
        if im.ctx != target:
            raise ContextError("images must share the target context")
    cache: dict = {}

    def img_pow(i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = power(images[i], e)
        return cache[key]

    acc = set()
    for t in p.terms:
        term = target.one()
        for i, e in enumerate(t):
            if e:
                term = mul(term, img_pow(i, e))
                if not term.terms:
                    break
        acc ^= term.terms
        _check_size(len(acc))
    return Polynomial(frozenset(acc), target)


def linear_substitute(p: Polynomial, matrix: Sequence[Sequence[int]]) -> Polynomial:
    """Replace variable i by the linear form in column i of ``matrix``."""
    ctx = p.ctx
    n = ctx.var_count
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise InvalidSubstitutionError("matrix must be square of size var_count")
    if len(set(ctx.var_degrees)) != 1:
        raise UnsupportedError("linear substitution needs equal variable degrees")
    cols = [sum((matrix[r][c] & 1) << r for r in range(n)) for c in range(n)]
    if _gf2_rank(cols) < n:
        raise InvalidSubstitutionError("matrix is singular over GF(2)")
    images = []
    for c in range(n):
        terms = []
        for r in range(n):
            if matrix[r][c] & 1:
                e = [0] * n
                e[r] = 1
                terms.append(tuple(e))
        images.append(Polynomial.from_terms(terms, ctx))
    return compose(p, images, ctx)


def homogeneous_component(p: Polynomial, n: int) -> Polynomial:
    deg = p.ctx.degree
    return Polynomial(frozenset(t for t in p.terms if deg(t) == n), p.ctx)


def top_degree(p: Polynomial):
    """Largest weighted degree present, or None for the zero polynomial."""
    if not p.terms:
        return None
    return max(map(p.ctx.degree, p.terms))


def degrees(p: Polynomial) -> list:
    return sorted({p.ctx.degree(t) for t in p.terms})


def monomial_coefficient(p: Polynomial, mono) -> int:
    if isinstance(mono, Polynomial):
        if len(mono.terms) != 1:
            raise ParameterError("expected a single monomial")
        (mono,) = mono.terms
    return 1 if tuple(mono) in p.terms else 0


# -- text format -----------------------------------------------------------

def term_key(ctx: RingContext):
    """Ascending weighted degree, then variable 1 most significant (descending)."""
    def key(t):
        return (ctx.degree(t), tuple(-e for e in t))
    return key


def sorted_terms(p: Polynomial) -> list:
    return sorted(p.terms, key=term_key(p.ctx))


def monomial_text(t, ctx: RingContext) -> str:
    parts = []
    for i, e in enumerate(t):
        if e == 0:
            continue
        name = ctx.stem if ctx.index_base is None else f"{ctx.stem}{i + ctx.index_base}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def to_text(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    return " + ".join(monomial_text(t, p.ctx) for t in sorted_terms(p))


_FACTOR = re.compile(r"^([A-Za-z]+)(\d*)(?:\^(\d+))?$")


def parse(text: str, ctx: RingContext) -> Polynomial:
    """Inverse of :func:`to_text`; also accepts unsorted and repeated terms."""
    text = text.strip()
    if text == "0" or not text:
        return ctx.zero()
    terms = []
    for raw in text.split("+"):
        raw = raw.strip()
        e = [0] * ctx.var_count
        if raw != "1":
            for factor in raw.split("*"):
                m = _FACTOR.match(factor.strip())
                if not m or m.group(1) != ctx.stem:
                    raise ParameterError(f"cannot parse factor {factor!r}")
                if ctx.index_base is None:
                    j = 0 if m.group(2) == "" else -1
                elif m.group(2) == "":
                    j = -1
                else:
                    j = int(m.group(2)) - ctx.index_base
                if not 0 <= j < ctx.var_count:
                    raise ParameterError(f"variable {factor!r} out of range")
                e[j] += int(m.group(3) or 1)
        terms.append(tuple(e))
    return Polynomial.from_terms(terms, ctx)
