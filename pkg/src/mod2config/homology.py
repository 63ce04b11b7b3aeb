"""Mod-2 Betti numbers of unordered configuration spaces of R^d.

Homology in weight k is spanned by monomials in the generators u and
Q_{i_1}..Q_{i_s} u (1 <= i_1 <= .. <= i_s <= d-1); a generator of length s
has weight 2^s and degree i_1 + 2 i_2 + .. + 2^(s-1) i_s.  Dimensions are
counted by a two-variable knapsack over that generator list.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import limits
from .errors import ParameterError, ResourceError

MAX_D = 9
MAX_K = 256


@dataclass(frozen=True)
class AdmissibleWord:
    indices: tuple  # nondecreasing, entries in 1..d-1

    @property
    def weight(self) -> int:
        return 1 << len(self.indices)

    @property
    def degree(self) -> int:
        return sum(i << j for j, i in enumerate(self.indices))

    def text(self) -> str:
        return "".join(f"Q{i}" for i in self.indices) + "u"


def admissible_words(d: int, max_weight: int) -> list:
    """All generators of weight <= max_weight, shortest first."""
    words = []
    s = 0
    while (1 << s) <= max_weight:
        for idx in itertools.combinations_with_replacement(range(1, d), s):
            words.append(AdmissibleWord(idx))
        s += 1
    return words


def top_degree(d: int, k: int) -> int:
    return (d - 1) * (k - 1)


def _check(d: int, k: int):
    if d < 2:
        raise ParameterError("d must be >= 2")
    if k < 1:
        raise ParameterError("k must be >= 1")
    if d > MAX_D or k > MAX_K:
        raise ResourceError(f"(d, k) = ({d}, {k}) beyond guard d <= {MAX_D}, k <= {MAX_K}")


@lru_cache(maxsize=64)
def _table(d: int, k: int) -> tuple:
    """table[w][i] = number of generator monomials of weight w and degree i."""
    top = top_degree(d, k)
    words = admissible_words(d, k)
    work = sum(k - w.weight + 1 for w in words) * (top + 1)
    if work > limits.max_grid() * 100:
        raise ResourceError(f"enumeration work {work} exceeds guard")
    table = [[0] * (top + 1) for _ in range(k + 1)]
    table[0][0] = 1
    for w in words:
        wt, g = w.weight, w.degree
        if g > top:
            continue
        # unbounded knapsack: ascending weight lets w repeat
        for weight in range(wt, k + 1):
            src, dst = table[weight - wt], table[weight]
            for i in range(top + 1 - g):
                if src[i]:
                    dst[i + g] += src[i]
    return tuple(tuple(row) for row in table)


def poincare_config(d: int, k: int) -> tuple:
    """Betti numbers in degrees 0..(d-1)(k-1)."""
    _check(d, k)
    return _table(d, k)[k]


def dim_config_homology(d: int, k: int, i: int) -> int:
    _check(d, k)
    if i < 0:
        raise ParameterError("degree must be nonnegative")
    series = _table(d, k)[k]
    return series[i] if i < len(series) else 0


def monomials(d: int, k: int, i: int) -> list:
    """Explicit monomials of weight k and degree i, as sorted word tuples (small cases)."""
    _check(d, k)
    words = [w for w in admissible_words(d, k) if w.degree <= i]
    out = []

    def rec(start, weight, degree, acc):
        if weight == k and degree == i:
            out.append(tuple(acc))
            return
        for j in range(start, len(words)):
            w = words[j]
            if weight + w.weight <= k and degree + w.degree <= i:
                acc.append(w)
                rec(j, weight + w.weight, degree + w.degree, acc)
                acc.pop()

    rec(0, 0, 0, [])
    return out


@lru_cache(maxsize=None)
def _pow2_parts(n: int, parts: int, j: int) -> int:
    """Multisets of ``parts`` powers of two, each <= 2^j, summing to n."""
    if parts == 0:
        return 1 if n == 0 else 0
    if n < parts:
        return 0
    if j == 0:
        return 1 if n == parts else 0
    total = 0
    step = 1 << j
    for c in range(min(parts, n // step) + 1):
        total += _pow2_parts(n - c * step, parts - c, j - 1)
    return total


def fuks_dim(n: int, k: int) -> int:
    """Number of ways to write n as a sum of exactly n-k powers of two."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    if k < 0 or k >= n:
        return 0
    return _pow2_parts(n, n - k, n.bit_length() - 1)


def fuks_series(n: int) -> tuple:
    return tuple(fuks_dim(n, i) for i in range(n))
