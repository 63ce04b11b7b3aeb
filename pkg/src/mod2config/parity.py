"""Dyadic invariants, binomial parity and the key nonvanishing condition."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import ParameterError
from .polyf2 import RingContext, geometric_inverse, monomial_coefficient, power


class Dyadic(NamedTuple):
    alpha: int  # number of ones in binary
    epsilon: int  # k mod 2
    gamma: int  # bit length, floor(log2 k) + 1


def dyadic_invariants(k: int) -> Dyadic:
    if k < 1:
        raise ParameterError("k must be positive")
    return Dyadic(bin(k).count("1"), k & 1, k.bit_length())


def alpha(k: int) -> int:
    return dyadic_invariants(k).alpha


def epsilon(k: int) -> int:
    return k & 1


def gamma(k: int) -> int:
    return dyadic_invariants(k).gamma


def is_power_of_two(k: int) -> bool:
    return k >= 1 and k & (k - 1) == 0


def two_adic_valuation(k: int) -> int:
    if k < 1:
        raise ParameterError("valuation needs a positive integer")
    return (k & -k).bit_length() - 1


def binom_parity(a: int, b: int) -> int:
    """Coefficient of T^b in (1 + T)^a over GF(2), for any integer a.

    For negative a, (1+T)^(2^N) = 1 + T^(2^N) agrees with 1 below degree
    2^N, so shifting a by 2^N > b does not change the coefficient.
    """
    if b < 0:
        raise ParameterError("lower argument must be nonnegative")
    if a < 0:
        n = max(b + 1, -a).bit_length()
        a += 1 << n
    return 1 if b & ~a == 0 else 0


def key_argument(d: int, m: int, ell: int, r: Sequence[int]) -> int:
    """Upper argument of the key binomial; the lower one is d - 1.

    sum_{i<m} r_i 2^(m-1-i) + r_m - (d-1+ell)(2^(m-1) - 1) - ell
    """
    if len(r) != m:
        raise ParameterError(f"expected {m} multiplicities, got {len(r)}")
    weighted = sum(ri << (m - 1 - i) for i, ri in enumerate(r[:-1], start=1))
    return weighted + r[-1] - (d - 1 + ell) * ((1 << (m - 1)) - 1) - ell


@dataclass(frozen=True)
class KeyQuery:
    d: int
    m: int
    ell: int
    r: tuple

    def __post_init__(self):
        if self.d < 2 or self.m < 1:
            raise ParameterError("need d >= 2 and m >= 1")
        if len(self.r) != self.m:
            raise ParameterError(f"expected {self.m} multiplicities, got {len(self.r)}")
        if any(x < 0 for x in self.r):
            raise ParameterError("multiplicities must be nonnegative")


def key_condition(d: int, m: int, ell: int, r: Sequence[int]) -> int:
    """Parity of the key binomial; 1 means the top class does not vanish."""
    q = KeyQuery(d, m, ell, tuple(r))
    return binom_parity(key_argument(q.d, q.m, q.ell, q.r), q.d - 1)


def base_case_oracle(d: int, ell: int, r1: int) -> int:
    """Coefficient of f^(d-1) in (1+f)^(r1-ell) computed inside F2[f]/<f^d>."""
    if d < 2:
        raise ParameterError("d must be >= 2")
    ctx = RingContext.make(1, cap=d, stem="f", index_base=None)
    unit = ctx.one() + ctx.var(1)
    n = r1 - ell
    val = power(unit, n) if n >= 0 else geometric_inverse(power(unit, -n))
    return monomial_coefficient(val, (d - 1,))


def split_dimension(d: int):
    """Write d = 2^t + e with t >= 0 and 0 <= e < 2^t."""
    if d < 1:
        raise ParameterError("d must be positive")
    t = d.bit_length() - 1
    return t, d - (1 << t)


@dataclass(frozen=True)
class FamilyCase:
    family: int
    m: int
    ell: int
    r: tuple
    k: int | None
    value: int


def family_cases(d: int, m: int, ks=(0, 1, 2)) -> list:
    """The three parameter families with guaranteed odd key binomial."""
    if d < 2:
        raise ParameterError("d must be >= 2")
    t, e = split_dimension(d)
    cases = []
    r1 = (0,) + (2 * e,) * (m - 1)
    cases.append(FamilyCase(1, m, 1, r1, None, key_condition(d, m, 1, r1)))
    r2 = (2 * e,) * m
    cases.append(FamilyCase(2, m, d + 1, r2, None, key_condition(d, m, d + 1, r2)))
    zero = (0,) * m
    for k in ks:
        ell = -(d - 1 + (k << (t + 1)))
        cases.append(FamilyCase(3, m, ell, zero, k, key_condition(d, m, ell, zero)))
    return cases


def family_report(d: int, ms=range(1, 7), ks=(0, 1, 2)) -> list:
    """Report over m for all three families; every value is expected to be 1."""
    out = []
    for m in ms:
        out.extend(family_cases(d, m, ks))
    return out
