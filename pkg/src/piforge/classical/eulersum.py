"""Euler-Maclaurin acceleration for slowly convergent zeta and harmonic sums.

The plain partial sums of 1/n**2, H_n/n**3 and (H_n)**2/n**2 gain well under
a digit per hundred terms, far short of the spot checks this package makes
at forty digits. The closed tails here fix that with rational arithmetic
only: power-sum tails come from the Euler-Maclaurin expansion with exact
Bernoulli coefficients, and the harmonic weights are removed by swapping
summation order, which turns each harmonic tail into a finite rational
combination of ordinary power tails. No logarithms, no Euler gamma, no
floating point: every intermediate is a Fraction, so the only approximation
is the analytically bounded truncation of the asymptotic series.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..bigfixed import BigFixed

__all__ = [
    "bernoulli",
    "zeta_tail",
    "harmonic_tail",
    "zeta_even",
    "euler_sum_linear",
    "euler_sum_squared",
]

_bernoulli_cache: list[Fraction] = [Fraction(1)]


def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m (B_1 = -1/2 convention), exact."""
    from math import comb

    while len(_bernoulli_cache) <= m:
        k = len(_bernoulli_cache)
        acc = Fraction(0)
        for j in range(k):
            acc += comb(k + 1, j) * _bernoulli_cache[j]
        _bernoulli_cache.append(-acc / (k + 1))
    return _bernoulli_cache[m]


def _rising(s: int, m: int) -> int:
    out = 1
    for j in range(m):
        out *= s + j
    return out


@lru_cache(maxsize=None)
def _tail_coeffs(s: int, levels: int) -> tuple:
    """Asymptotic coefficients (c, j) with sum_{n>N} n**-s ~ sum c * N**-j."""
    from math import factorial

    coeffs = [(Fraction(1, s - 1), s - 1), (Fraction(-1, 2), s)]
    for k in range(1, levels + 1):
        c = bernoulli(2 * k) * _rising(s, 2 * k - 1) / factorial(2 * k)
        coeffs.append((c, s + 2 * k - 1))
    return tuple(coeffs)


_LEVELS = 26


def zeta_tail(s: int, n: int) -> Fraction:
    """sum_{m > n} m**-s by Euler-Maclaurin; truncation far below 2**-180 for n >= 48."""
    if s < 2:
        raise ValueError("tail requires s >= 2")
    if n < 48:
        raise ValueError("cutoff too small for the fixed truncation depth")
    total = Fraction(0)
    for c, j in _tail_coeffs(s, _LEVELS):
        total += c / Fraction(n) ** j
    return total


def harmonic_tail(s: int, n: int) -> Fraction:
    """sum_{m > n} (H_m - H_n) * m**-s, rationally.

    Swapping the summation order gives sum_{m > n} T~_s(m) / m where
    T~_s(m) = sum_{k >= m} k**-s; substituting the asymptotic expansion of
    T~_s reduces everything to ordinary power tails at n.
    """
    total = Fraction(0)
    for c, j in _tail_coeffs(s, _LEVELS):
        total += c * zeta_tail(j + 1, n)
    total += zeta_tail(s + 1, n)  # the k = m diagonal of T~
    return total


def _harmonic_numbers(n: int) -> list[Fraction]:
    h = [Fraction(0)]
    for m in range(1, n + 1):
        h.append(h[-1] + Fraction(1, m))
    return h


_CUTOFF = 64


def zeta_even(s: int, prec: int) -> BigFixed:
    """zeta(s) for even s >= 2, from its defining series plus the closed tail."""
    partial = sum(Fraction(1, m**s) for m in range(1, _CUTOFF + 1))
    return BigFixed.from_fraction(partial + zeta_tail(s, _CUTOFF), prec)


def euler_sum_linear(prec: int) -> BigFixed:
    """sum of H_n / n**3 over n >= 1, to `prec` certified bits."""
    n = _CUTOFF
    h = _harmonic_numbers(n)
    partial = sum(h[m] / Fraction(m) ** 3 for m in range(1, n + 1))
    value = partial + h[n] * zeta_tail(3, n) + harmonic_tail(3, n)
    return BigFixed.from_fraction(value, prec)


def euler_sum_squared(prec: int) -> BigFixed:
    """sum of (H_n)**2 / n**2 over n >= 1, to `prec` certified bits.

    The squared harmonic weight splits as (H_n)**2 = H_N**2
    + 2 H_N (H_n - H_N) + (H_n - H_N)**2 beyond the cutoff N; the square of
    the partial-harmonic difference expands, after two summation swaps, into
    harmonic tails and power tails again.
    """
    n = _CUTOFF
    h = _harmonic_numbers(n)
    partial = sum((h[m] / m) ** 2 for m in range(1, n + 1))
    coeffs = _tail_coeffs(2, _LEVELS)
    tilde = list(coeffs) + [(Fraction(1), 2)]  # expansion of T~_2

    # sum_{j>n} T~_2(j) / j**2
    e_piece = sum(c * zeta_tail(j + 2, n) for c, j in tilde)
    # sum_{m>n} T~_2(m) (H_{m-1} - H_n) / m
    w_piece = sum(c * (harmonic_tail(j + 1, n) - zeta_tail(j + 2, n)) for c, j in tilde)
    value = (
        partial
        + h[n] ** 2 * zeta_tail(2, n)
        + 2 * h[n] * harmonic_tail(2, n)
        + e_piece
        + 2 * w_piece
    )
    return BigFixed.from_fraction(value, prec)
