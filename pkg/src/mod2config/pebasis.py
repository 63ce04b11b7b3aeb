"""Additive basis for the cohomology of the Pe(R^d, 2^m) quotient.

The basis for 2^(m+1) points is built from the basis B for 2^m points:

1. (v (x) v) (x) f^j for v in B, 0 <= j <= d-1, degree 2 deg v + j;
2. one class per unordered pair u != v, degree deg u + deg v;
3. one more class per unordered pair, degree deg u + deg v + d - 1.

Rule 1 applied to an a-part element stays in the a-part (the truncated
polynomial summand); everything else is the i-part (the ideal summand).
Explicit enumeration is only feasible for small (d, m); graded counts are
computed by the same recursion on series.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import limits
from .errors import ParameterError, ResourceError

A_PART = "a-part"
I_PART = "i-part"


@dataclass(frozen=True)
class PeBasisElement:
    degree: int
    tag: str
    rule: str  # "base", "square", "pair", "pair-shifted"
    parents: tuple = field(default=(), compare=False, repr=False)
    j: int | None = None


def _check(d: int, m: int):
    if d < 2:
        raise ParameterError("d must be >= 2 (finite d only)")
    if m < 0:
        raise ParameterError("m must be >= 0")


def basis_size(d: int, m: int) -> int:
    """|B_m| via |B_(m+1)| = d |B_m| + |B_m| (|B_m| - 1)."""
    _check(d, m)
    size = 1
    for _ in range(m):
        size = d * size + size * (size - 1)
    return size


def pe_basis(d: int, m: int) -> list:
    """Explicit basis elements with construction provenance."""
    _check(d, m)
    if basis_size(d, m) > limits.max_grid():
        raise ResourceError(f"basis of size {basis_size(d, m)} exceeds grid guard")
    level = [PeBasisElement(0, A_PART, "base")]
    for _ in range(m):
        nxt = []
        for v in level:
            for j in range(d):
                nxt.append(PeBasisElement(2 * v.degree + j, v.tag, "square", (v,), j))
        for a in range(len(level)):
            for b in range(a + 1, len(level)):
                u, v = level[a], level[b]
                nxt.append(PeBasisElement(u.degree + v.degree, I_PART, "pair", (u, v)))
                nxt.append(PeBasisElement(u.degree + v.degree + d - 1, I_PART, "pair-shifted", (u, v)))
        level = nxt
    return level


def _series_add(a: list, b: list) -> list:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def _series_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _series_stretch(a: list) -> list:
    """a(t) -> a(t^2)."""
    out = [0] * (2 * len(a) - 1)
    for i, x in enumerate(a):
        out[2 * i] = x
    return out


def _trim(a: list) -> list:
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


def pe_series_split(d: int, m: int) -> dict:
    """Graded counts of a-part and i-part basis elements, plus the total."""
    _check(d, m)
    geo = [1] * d  # 1 + t + .. + t^(d-1)
    a_series = [1]
    total = [1]
    for _ in range(m):
        squares_all = _series_mul(_series_stretch(total), geo)
        a_series = _series_mul(_series_stretch(a_series), geo)
        sq = _series_mul(total, total)
        diag = _series_stretch(total)
        pairs = [(x - (diag[i] if i < len(diag) else 0)) // 2 for i, x in enumerate(sq)]
        shift = [0] * (d - 1) + [1]
        shift[0] += 1
        total = _series_add(squares_all, _series_mul(pairs, shift))
    total = _trim(total)
    n = len(total)
    a_series = (a_series + [0] * n)[:n]
    i_series = [t - a for t, a in zip(total, a_series)]
    return {"a_series": a_series, "i_series": i_series, "total": total}


def truncated_product_series(d: int, m: int) -> list:
    """Coefficients of prod_{r=1..m} sum_{j<d} t^(j 2^(r-1))."""
    out = [1]
    for r in range(m):
        factor = [0] * ((d - 1) * (1 << r) + 1)
        for j in range(d):
            factor[j << r] = 1
        out = _series_mul(out, factor)
    return out


def series_from_basis(elements: list) -> dict:
    top = max(e.degree for e in elements)
    a = [0] * (top + 1)
    i = [0] * (top + 1)
    for e in elements:
        (a if e.tag == A_PART else i)[e.degree] += 1
    return {"a_series": a, "i_series": i, "total": [x + y for x, y in zip(a, i)]}
