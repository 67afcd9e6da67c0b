"""Exact-rational certification of the two WZ pairs behind the 4/pi and
8/pi**2 double identities.

A pair (F, G) is certified by checking F(n+1, k) - F(n, k) =
G(n, k+1) - G(n, k) exactly on a grid: every value is a Fraction built
from binomials and powers of two, so a pass means zero defect, not small
defect. The companion series H(n, k) = F(n+1, n+k) + G(n, n+k) and the
closing limit of G(0, k) are evaluated numerically on top of the exact
core. A deliberately mutated pair ships as a negative control so the
verifier's ability to fail is itself under test.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .bigfixed import BigFixed
from .exactnum import binomial

__all__ = [
    "WZPair",
    "VerifyReport",
    "eval_G",
    "eval_F",
    "eval_H",
    "verify_pair",
    "eval_H_series",
    "limit_check",
    "WZ_PAIRS",
    "MUTATED_GUI1",
]


@dataclass(frozen=True)
class WZPair:
    id: str
    binom_power: int  # exponent on C(2n,n); the k-binomial pair uses power-1
    two_exp_n: int  # power of 2 per n in the denominator
    two_exp_k: int  # power of 2 per k in the denominator
    alternating: bool
    g_multiplier: tuple  # coefficients of the G multiplier in n and k
    f_multiplier: str  # "8n" or "8n(2n+4k+1)"
    target_power: int  # constant is 4/pi for power 1, 8/pi**2 for power 2


def _prefactor(pair: WZPair, n: int, k: int) -> Fraction:
    p = pair.binom_power
    q = p - 1
    num = binomial(2 * n, n) ** p * binomial(2 * k, k) ** q
    den = binomial(n + k, k) ** q * 2 ** (pair.two_exp_n * n + pair.two_exp_k * k)
    value = Fraction(num, den)
    if pair.alternating and n % 2:
        value = -value
    return value


def _g_mult(pair: WZPair, n: int, k: int) -> int:
    if pair.id.startswith("gui1"):
        c0, cn, ck = pair.g_multiplier
        return c0 + cn * n + ck * k
    c0, cn, cn2, ckn, ck, ck2 = pair.g_multiplier
    return c0 + cn * n + cn2 * n * n + ckn * k * n + ck * k + ck2 * k * k


def eval_G(pair: WZPair, n: int, k: int) -> Fraction:
    """Exact value of the certified summand G(n, k)."""
    if n < 0 or k < 0:
        raise ValueError("indices must be nonnegative")
    return _prefactor(pair, n, k) * _g_mult(pair, n, k)


def eval_F(pair: WZPair, n: int, k: int) -> Fraction:
    """Exact value of the companion F(n, k); F(0, k) = 0 by construction."""
    if n < 0 or k < 0:
        raise ValueError("indices must be nonnegative")
    if pair.f_multiplier == "8n":
        mult = 8 * n
    else:
        mult = 8 * n * (2 * n + 4 * k + 1)
    return _prefactor(pair, n, k) * mult


def eval_H(pair: WZPair, n: int, k: int) -> Fraction:
    """Companion-series term H(n, k) = F(n+1, n+k) + G(n, n+k)."""
    return eval_F(pair, n + 1, n + k) + eval_G(pair, n, n + k)


@dataclass(frozen=True)
class VerifyReport:
    pair_id: str
    passed: bool
    n_max: int
    k_max: int
    counterexample: tuple | None  # (n, k, lhs, rhs) as exact Fractions
    max_denominator_bits: int
    elapsed: float


def verify_pair(pair: WZPair, n_max: int, k_max: int) -> VerifyReport:
    """Exact telescoping check over the full grid 0 <= n <= n_max, 0 <= k <= k_max."""
    if n_max < 1 or k_max < 1:
        raise ValueError("grid bounds must be >= 1")
    start = time.perf_counter()
    max_den = 0
    for k in range(k_max + 1):
        f_here = eval_F(pair, 0, k)
        g_here = eval_G(pair, 0, k)
        for n in range(n_max + 1):
            f_next = eval_F(pair, n + 1, k)
            g_right = eval_G(pair, n, k + 1)
            lhs = f_next - f_here
            rhs = g_right - g_here
            max_den = max(max_den, lhs.denominator.bit_length(), rhs.denominator.bit_length())
            if lhs != rhs:
                return VerifyReport(
                    pair.id, False, n_max, k_max, (n, k, lhs, rhs),
                    max_den, time.perf_counter() - start,
                )
            f_here = f_next
            g_here = eval_G(pair, n + 1, k)
    return VerifyReport(pair.id, True, n_max, k_max, None, max_den, time.perf_counter() - start)


def _series_value(terms, prec: int) -> BigFixed:
    f = prec + 96
    total = 0
    for t in terms:
        total += (t.numerator << f) // t.denominator
    return BigFixed(total, f, prec)


def eval_H_series(pair: WZPair, k: int, terms: int, prec: int) -> BigFixed:
    """Partial sum of the companion series sum_n H(n, k)."""
    if terms < 1:
        raise ValueError("need at least one term")
    return _series_value((eval_H(pair, n, k) for n in range(terms)), prec)


def g_series(pair: WZPair, k: int, terms: int, prec: int) -> BigFixed:
    """Partial sum of sum_n G(n, k); independent of k in the limit."""
    if terms < 1:
        raise ValueError("need at least one term")
    return _series_value((eval_G(pair, n, k) for n in range(terms)), prec)


def target_value(pair: WZPair, prec: int) -> BigFixed:
    from . import reference

    if pair.target_power == 1:
        return BigFixed.from_int(4, prec) / reference.pi_bigfixed(prec)
    return BigFixed.from_int(8, prec) / reference.pi_power(2, prec)


def limit_check(pair: WZPair, k_probe: int, prec: int = 96) -> BigFixed:
    """|G(0, k_probe) - target|: the closing limit of the telescoped identity."""
    if k_probe < 1:
        raise ValueError("k_probe must be >= 1")
    g0 = BigFixed.from_fraction(eval_G(pair, 0, k_probe), prec)
    return abs(g0 - target_value(pair, prec))


WZ_PAIRS: dict[str, WZPair] = {
    "gui1": WZPair("gui1", 3, 8, 4, False, (1, 6, 4), "8n", 1),
    "gui2": WZPair("gui2", 5, 12, 8, True, (1, 8, 20, 24, 4, 8), "8n(2n+4k+1)", 2),
}

# Negative control: same shape as gui1 with the multiplier constant nudged
# from 6n+4k+1 to 6n+4k+2. The verifier must fail on it with a witness.
MUTATED_GUI1 = WZPair("gui1_mutated", 3, 8, 4, False, (2, 6, 4), "8n", 1)
