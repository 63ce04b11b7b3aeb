"""Non-existence bounds for highly regular embeddings.

Every result is normalised to "largest excluded codomain dimension N":
no embedding of the given kind exists for any N up to and including
``value``.  Each formula is the sum of a guaranteed nonvanishing dual
class degree and a fixed offset (k - 1 for k-regular maps, (d+1)l - 2
for l-skew maps, their sum for the combined notion).

Case identifiers are internal; ``bound_cases.json`` maps them onto
citation labels for display.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import ParameterError
from .parity import alpha, epsilon, gamma, is_power_of_two, split_dimension, two_adic_valuation

KINDS = ("k-regular", "l-skew", "k-regular-l-skew", "complex-k-regular", "complex-l-skew")
PARAM_CAP = 1 << 30


@lru_cache(maxsize=None)
def case_catalog() -> dict:
    raw = resources.files("mod2config.data").joinpath("bound_cases.json").read_text()
    return json.loads(raw)["cases"]


def case_label(case_id: str) -> str:
    entry = case_catalog()[case_id]
    return entry["theorem"] + (f"({entry['case']})" if entry["case"] else "")


@dataclass(frozen=True)
class BoundResult:
    value: int | None
    case_id: str
    formula: str

    @property
    def source(self) -> str:
        return case_label(self.case_id)


def _need(name, v, lo=1):
    if v is None:
        raise ParameterError(f"missing parameter {name}")
    if not lo <= v <= PARAM_CAP:
        raise ParameterError(f"{name}={v} outside {lo}..{PARAM_CAP}")


def _half(n: int) -> int:
    # all halved quantities in the real bounds are even by construction
    assert n % 2 == 0, n
    return n // 2


def _excess(d: int) -> int:
    """2^gamma(d) - d - 1."""
    return (1 << gamma(d)) - d - 1


# -- k-regular -------------------------------------------------------------

def kreg_split_raw(d: int, k: int) -> int:
    t, e = split_dimension(d)
    a, eps = alpha(k), epsilon(k)
    return (d - e - 1) * (k - a) + e * (a - eps) + k - 1


def bound_k_regular(d: int, k: int) -> list:
    _need("d", d)
    _need("k", k)
    a, eps = alpha(k), epsilon(k)
    out = []
    if is_power_of_two(d):
        out.append(BoundResult(d * (k - a) + a - 1, "kreg.pow2", "N <= d(k-alpha(k)) + alpha(k) - 1"))
    else:
        out.append(BoundResult(_half((d - 1) * (k - eps)) + k - 1, "kreg.nonpow2",
                               "N <= (d-1)(k-eps(k))/2 + k - 1"))
        if d % 2 == 0:
            out.append(BoundResult(_half(d * (k - eps)) + k - a + eps - 1, "kreg.even-nonpow2",
                                   "N <= d(k-eps(k))/2 + k - alpha(k) + eps(k) - 1"))
    if d >= 2:
        out.append(BoundResult(kreg_split_raw(d, k), "kreg.split",
                               "N <= (d-e-1)(k-alpha(k)) + e(alpha(k)-eps(k)) + k - 1"))
    return out


# -- l-skew ----------------------------------------------------------------

def skew_split_raw(d: int, ell: int) -> int:
    t, e = split_dimension(d)
    return (d - 2 * e - 1) * (ell - alpha(ell)) + (d + 1) * ell - 2


def _generic(d: int) -> bool:
    return d >= 5 and not is_power_of_two(d) and not is_power_of_two(d + 1)


def bound_l_skew(d: int, ell: int) -> list:
    _need("d", d, 2)
    _need("ell", ell)
    a, eps = alpha(ell), epsilon(ell)
    base = (d + 1) * ell - 2
    out = []
    if d == 2 and ell >= 2:
        out.append(BoundResult(4 * ell - a - 2, "skew.d2", "N <= 4l - alpha(l) - 2"))
    if ell == 2:
        out.append(BoundResult((1 << gamma(d)) + d - 1, "skew.l2", "N <= 2^gamma(d) + d - 1"))
    if is_power_of_two(d) and ell >= 2:
        out.append(BoundResult(2 * d * ell - (d - 1) * a - 2, "skew.pow2",
                               "N <= 2dl - (d-1)alpha(l) - 2"))
    if is_power_of_two(d + 1) and ell >= 2:
        out.append(BoundResult(None, "skew.dplus1-pow2", "no nontrivial bound"))
    if _generic(d) and ell >= 3:
        x = _excess(d)
        out.append(BoundResult(_half(x * (ell - eps)) + base, "skew.generic",
                               "N <= (2^gamma(d)-d-1)(l-eps(l))/2 + (d+1)l - 2"))
        v = 1 << two_adic_valuation(x)
        out.append(BoundResult(_half((x + v) * (ell - eps)) - v * a + base, "skew.generic-val",
                               "N <= (2^gamma(d)-d-1+2^a1)(l-eps(l))/2 - 2^a1 alpha(l) + (d+1)l - 2"))
    # the split bound collapses to the trivial (d+1)l - 2 when d+1 is a power of 2
    value = None if is_power_of_two(d + 1) else skew_split_raw(d, ell)
    out.append(BoundResult(value, "skew.split", "N <= (d-2e-1)(l-alpha(l)) + (d+1)l - 2"))
    return out


# -- k-regular-l-skew ------------------------------------------------------

def combined_split_raw(d: int, k: int, ell: int) -> int:
    t, e = split_dimension(d)
    a, eps = alpha(k), epsilon(k)
    return ((d - e - 1) * (k - a) + e * (a - eps)
            + (d - 2 * e - 1) * (ell - alpha(ell)) + (d + 1) * ell + k - 2)


def bound_combined(d: int, k: int, ell: int) -> list:
    _need("d", d)
    _need("k", k)
    _need("ell", ell)
    ak, ek = alpha(k), epsilon(k)
    al, el = alpha(ell), epsilon(ell)
    base = (d + 1) * ell + k - 2
    out = []
    if d == 2:
        out.append(BoundResult(base + k - ak + ell - al, "comb.d2",
                               "N <= (d+1)l + 2k - alpha(k) + l - alpha(l) - 2"))
    if d >= 2 and is_power_of_two(d) and ell == 2:
        out.append(BoundResult(base + (d - 1) * (k - ak + 1), "comb.pow2-l2",
                               "N <= (d+1)l + k - 2 + (d-1)(k-alpha(k)+1)"))
    if d >= 3 and not is_power_of_two(d) and ell == 2:
        out.append(BoundResult(base + _half((d - 1) * (k - ek)) + _excess(d), "comb.nonpow2-l2",
                               "N <= (d+1)l + k - 2 + (d-1)(k-eps(k))/2 + 2^gamma(d) - d - 1"))
    if d >= 2 and is_power_of_two(d):
        out.append(BoundResult(base + (d - 1) * (k - ak + ell - al), "comb.pow2",
                               "N <= (d+1)l + k - 2 + (d-1)(k-alpha(k)+l-alpha(l))"))
    if is_power_of_two(d + 1):
        out.append(BoundResult(base + _half((d - 1) * (k - ek)), "comb.dplus1-pow2",
                               "N <= (d+1)l + k - 2 + (d-1)(k-eps(k))/2"))
    if _generic(d):
        out.append(BoundResult(base + _half((d - 1) * (k - ek)) + _half(_excess(d) * (ell - el)),
                               "comb.generic",
                               "N <= (d+1)l + k - 2 + (d-1)(k-eps(k))/2 + (2^gamma(d)-d-1)(l-eps(l))/2"))
    if d >= 6 and d % 2 == 0 and not is_power_of_two(d) and ell >= 3:
        x = _excess(d)
        v = 1 << two_adic_valuation(x)
        val = (base + _half(d * (k - ek)) - ak + ek
               + _half((x + v) * (ell - el)) - v * al)
        out.append(BoundResult(val, "comb.even-val",
                               "N <= (d+1)l + k - 2 + d(k-eps(k))/2 - alpha(k) + eps(k)"
                               " + (2^gamma(d)-d-1+2^a1)(l-eps(l))/2 - 2^a1 alpha(l)"))
    if d >= 2:
        out.append(BoundResult(combined_split_raw(d, k, ell), "comb.split",
                               "N <= (d-e-1)(k-alpha(k)) + e(alpha(k)-eps(k))"
                               " + (d-2e-1)(l-alpha(l)) + (d+1)l + k - 2"))
    return out


# -- complex ---------------------------------------------------------------

def bound_complex(kind: str, d: int, m: int) -> list:
    """Complex bounds; ``m`` is k for k-regular and l for l-skew queries.

    For ``complex-k-regular`` the domain is real d-space; for
    ``complex-l-skew`` it is complex d-space.
    """
    _need("d", d)
    _need("k" if kind == "complex-k-regular" else "ell", m)
    a, eps = alpha(m), epsilon(m)
    out = []
    if kind == "complex-k-regular":
        k = m
        if is_power_of_two(d):
            degree = (d - 1) * (k - a)
        else:
            degree = _half((d - 1) * (k - eps))
        # N < (M + k)/2
        out.append(BoundResult((degree + k + 1) // 2 - 1, "ckreg.dim", "N < (M + k)/2"))
        if d >= 3 and d % 2 == 1:
            dc = (d + 1) // 2
            t, e = split_dimension(dc)
            out.append(BoundResult((dc - 1 - e) * (k - a) + e * (a - eps) + k - 1, "ckreg.split",
                                   "N <= (dC-1-e)(k-alpha(k)) + e(alpha(k)-eps(k)) + k - 1"))
    elif kind == "complex-l-skew":
        ell = m
        wide = (1 << (gamma(d) + 1)) - 2 * d - 1
        if ell == 2:
            big_m = wide
        elif is_power_of_two(d):
            big_m = (2 * d - 1) * (ell - a)
        elif d >= 3:
            big_m = wide * (ell - eps) // 2
        else:
            big_m = None
        if big_m is not None:
            # N <= d + (M - l - 2)/2, rounded down
            out.append(BoundResult((2 * d + big_m - ell - 2) // 2, "cskew.dim", "N <= d + (M - l - 2)/2"))
        if d >= 2:
            t, e = split_dimension(d)
            out.append(BoundResult((d - 1 - 2 * e) * (ell - a) + (d + 1) * ell - 2, "cskew.split",
                                   "N <= (dC-1-2e)(l-alpha(l)) + (dC+1)l - 2"))
    else:
        raise ParameterError(f"unknown complex kind {kind!r}")
    return out


def bounds_for(kind: str, d: int, k: int | None = None, ell: int | None = None) -> list:
    if kind == "k-regular":
        return bound_k_regular(d, k)
    if kind == "l-skew":
        return bound_l_skew(d, ell)
    if kind == "k-regular-l-skew":
        return bound_combined(d, k, ell)
    if kind == "complex-k-regular":
        return bound_complex(kind, d, k)
    if kind == "complex-l-skew":
        return bound_complex(kind, d, ell)
    raise ParameterError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


def best_bound(kind: str, d: int, k: int | None = None, ell: int | None = None) -> BoundResult | None:
    """Strongest applicable result; a None-valued result if only empty cases apply."""
    results = bounds_for(kind, d, k, ell)
    if not results:
        return None
    valued = [r for r in results if r.value is not None]
    if not valued:
        return results[0]
    return max(valued, key=lambda r: r.value)
