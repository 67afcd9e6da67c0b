"""The three iterative pi algorithms: polygon doubling, AGM, and the quartic iteration.

Each algorithm exposes a ``*_trace`` variant returning per-step state so the
benchmark harness can log convergence (linear for the polygon recurrence,
digit-doubling for the AGM, digit-quadrupling for the quartic). Iterations
all run at the final working precision: these iterations do not self-correct,
so progressive precision would poison the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bigfixed import BigFixed, PrecisionError, nth_root, sqrt

__all__ = [
    "ArchimedesState",
    "AgmState",
    "QuarticState",
    "archimedes_run",
    "archimedes_trace",
    "agm_pi",
    "agm_trace",
    "quartic_pi",
    "quartic_trace",
    "iterations_for_digits",
]


@dataclass(frozen=True)
class ArchimedesState:
    n: int
    circumscribed: BigFixed  # perimeter of the outer polygon, upper bound
    inscribed: BigFixed  # perimeter of the inner polygon, lower bound


@dataclass(frozen=True)
class AgmState:
    k: int
    a: BigFixed
    b: BigFixed
    c_squared: BigFixed  # a_k**2 - b_k**2
    partial_sum: BigFixed  # sum of 2**j * c_squared_j for j <= k
    pi_estimate: BigFixed


@dataclass(frozen=True)
class QuarticState:
    n: int
    s: BigFixed
    t: BigFixed  # converges to 1/pi
    variant: str
    pi_estimate: BigFixed


def archimedes_trace(steps: int, prec: int) -> list[ArchimedesState]:
    """Polygon-doubling bounds for pi, starting from the hexagon pair.

    State n corresponds to regular polygons with 3 * 2**n sides. The gap
    shrinks by a factor of 4 per step, about 0.6 decimal digits.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if prec < 2 * steps + 32:
        raise PrecisionError(
            f"{steps} polygon doublings need at least {2 * steps + 32} bits, got {prec}"
        )
    two = BigFixed.from_int(2, prec)
    a = two * sqrt(BigFixed.from_int(3, prec), prec)
    b = BigFixed.from_int(3, prec)
    states = [ArchimedesState(1, a, b)]
    for n in range(2, steps + 1):
        a = (two * a * b) / (a + b)
        b = sqrt(a * b, prec)
        states.append(ArchimedesState(n, a, b))
    return states

def archimedes_run(steps: int, prec: int) -> tuple[BigFixed, BigFixed]:
    """(lower, upper) bracket of pi after `steps` doublings."""
    last = archimedes_trace(steps, prec)[-1]
    return last.inscribed, last.circumscribed


def agm_trace(iterations: int, prec: int) -> list[AgmState]:
    """Arithmetic-geometric mean iteration for pi.

    Couples a_0 = 1, b_0 = 1/sqrt(2) through the mean pair and estimates
    pi as 2*a_n**2 / (1 - sum(2**k * (a_k**2 - b_k**2))). Convergence is
    quadratic: correct digits double per iteration.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    one = BigFixed.from_int(1, prec)
    a = one
    b = sqrt(BigFixed.from_ratio(1, 2, prec), prec)
    c2 = a * a - b * b
    total = c2
    states = [AgmState(0, a, b, c2, total, (a * a).mul_pow2(1) / (one - total))]
    for k in range(1, iterations + 1):
        a, b = (a + b).mul_pow2(-1), sqrt(a * b, prec)
        c2 = a * a - b * b
        total = total + c2.mul_pow2(k)
        states.append(AgmState(k, a, b, c2, total, (a * a).mul_pow2(1) / (one - total)))
    return states


def agm_pi(iterations: int, prec: int) -> BigFixed:
    return agm_trace(iterations, prec)[-1].pi_estimate


_QUARTIC_VARIANTS = ("A", "B")


def quartic_trace(iterations: int, prec: int, variant: str = "A") -> list[QuarticState]:
    """Quartic iteration: correct digits quadruple per step.

    Variant A starts at s = sqrt(2) - 1, t = 6 - 4*sqrt(2) and updates t
    with the factor 2**(2n+3); variant B starts at s = 2**(-1/4), t = 1/2
    and uses 2**(2n+2), matching its halved exponent scale. t converges to
    1/pi from above.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if variant not in _QUARTIC_VARIANTS:
        raise ValueError(f"variant must be one of {_QUARTIC_VARIANTS}")
    one = BigFixed.from_int(1, prec)
    if variant == "A":
        r2 = sqrt(BigFixed.from_int(2, prec), prec)
        s = r2 - one
        t = BigFixed.from_int(6, prec) - r2.mul_pow2(2)
        exp_base = 3
    else:
        s = nth_root(BigFixed.from_ratio(1, 2, prec), 4, prec)
        t = BigFixed.from_ratio(1, 2, prec)
        exp_base = 2
    states = [QuarticState(0, s, t, variant, one / t)]
    for n in range(iterations):
        y = nth_root(one - (s * s) ** 2, 4, prec)
        s = (one - y) / (one + y)
        t = t * (one + s) ** 4 - (s * (one + s + s * s)).mul_pow2(2 * n + exp_base)
        states.append(QuarticState(n + 1, s, t, variant, one / t))
    return states


def quartic_pi(iterations: int, prec: int, variant: str = "A") -> BigFixed:
    return quartic_trace(iterations, prec, variant)[-1].pi_estimate


# Digits gained per step, used only to pick an iteration count from a digit
# target; two safety iterations are always added on top.
_ARCHIMEDES_DIGITS_PER_STEP = 0.6


def iterations_for_digits(algorithm: str, digits: int) -> int:
    """Iteration count that comfortably reaches `digits` decimal digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if algorithm == "archimedes":
        return math.ceil((digits + 1) / _ARCHIMEDES_DIGITS_PER_STEP) + 2
    if algorithm == "agm":
        return max(1, math.ceil(math.log2(max(2, digits)))) + 2
    if algorithm in ("quartic", "quartic-a", "quartic-b"):
        return max(1, math.ceil(math.log(max(2, digits), 4))) + 2
    raise ValueError(f"unknown iterative algorithm {algorithm!r}")
