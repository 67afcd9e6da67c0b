"""Isolated digit extraction for BBP-style formulas.

A formula here is a weighted list of parts, each part a sum over n of
sign**n * base**-n * sum_j a_j / (L*n + j)**e with base a power of two.
For e = 1 parts the fractional part of 2**B * value splits into a finite
sum whose numerators reduce through modular exponentiation plus a fast
tail, so digits at any position come out without touching earlier digits.
Everything accumulates in a fixed-point integer with 192 fractional bits;
extraction refuses, rather than degrades, when the requested digits would
eat into the guard margin.

Formulas with e = 2 (the pi**2 one) are validate-only: the modular trick
needs simple poles. The natural-log demonstrations live here too since
they share all the machinery.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .bigfixed import BigFixed, PrecisionError, decimal_digits_to_bits, sqrt

__all__ = [
    "BBPPart",
    "BBPFormula",
    "FORMULAS",
    "modpow",
    "extract_digits",
    "extract_bits",
    "validate_full",
    "ln2_value",
    "log_inv_series",
    "extract_ln2_bits",
]

_ACC_BITS = 192  # fractional bits in the extraction accumulator
_HEX = "0123456789ABCDEF"


@dataclass(frozen=True)
class BBPPart:
    base_bits: int  # g with base = 2**g
    period: int  # L
    coeffs: tuple  # a_1 .. a_L
    alternating: bool  # sign rule (-1)**n instead of +1
    scale: Fraction  # rational weight on this part
    power: int = 1  # e, the denominator exponent


@dataclass(frozen=True)
class BBPFormula:
    id: str
    parts: tuple
    target: str  # "pi", "pi_sqrt3", "pi_squared"
    note: str = ""

    @property
    def extractable(self) -> bool:
        return all(p.power == 1 for p in self.parts)

    @property
    def base_bits(self) -> int:
        return max(p.base_bits for p in self.parts)


def modpow(base: int, exp: int, modulus: int) -> int:
    """base**exp mod modulus by square-and-multiply; O(log exp) steps."""
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    if exp < 0:
        raise ValueError("exponent must be >= 0")
    if modulus == 1:
        return 0
    result = 1
    base %= modulus
    while exp:
        if exp & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        exp >>= 1
    return result


def _part_chunk(part: BBPPart, bit_pos: int, lo: int, hi: int) -> int:
    """Finite-sum contribution of indices lo..hi-1, scaled by 2**_ACC_BITS, mod 1.

    Uses the builtin pow in the hot loop; `modpow` above is the same
    operation and the property tests hold them equal. The loop runs per
    coefficient with everything hoisted: it dominates extraction time at
    large positions. The accumulator is only reduced mod 1 at the end;
    intermediate growth is a few dozen carry bits, which is why the mask
    can wait.
    """
    u, v = part.scale.numerator, part.scale.denominator
    g, L = part.base_bits, part.period
    acc = 0
    shift = _ACC_BITS
    _pow = pow
    for j, a in enumerate(part.coeffs, start=1):
        if a == 0:
            continue
        step = L * v
        base = v * j
        signs = (a * u, -a * u) if part.alternating else (a * u,)
        for parity, au in enumerate(signs):
            n0 = lo + ((parity - lo) % len(signs))
            stride = len(signs)
            e = bit_pos - g * n0
            de = g * stride
            for m in range(step * n0 + base, step * hi + base, step * stride):
                num = (au * _pow(2, e, m)) % m
                acc += (num << shift) // m
                e -= de
    return acc & ((1 << _ACC_BITS) - 1)


def _part_tail(part: BBPPart, bit_pos: int, start: int) -> int:
    """Geometric tail from index `start`, scaled by 2**_ACC_BITS."""
    u, v = part.scale.numerator, part.scale.denominator
    g, L = part.base_bits, part.period
    acc = 0
    n = start
    while True:
        shift = _ACC_BITS + bit_pos - g * n
        if shift < -8:
            break
        sign = -1 if (part.alternating and n & 1) else 1
        row = L * n
        for j, a in enumerate(part.coeffs, start=1):
            if a == 0:
                continue
            term = (abs(a) * u << max(0, shift)) // (v * (row + j))
            if shift < 0:
                term >>= -shift
            acc += term if (sign * a > 0) else -term
        n += 1
    return acc & ((1 << _ACC_BITS) - 1)


def extract_bits(formula: BBPFormula, bit_pos: int, workers: int = 1) -> int:
    """Fractional part of 2**bit_pos * value as an _ACC_BITS-bit integer."""
    if not formula.extractable:
        raise ValueError(f"{formula.id} has squared denominators; it is validate-only")
    if bit_pos < 0:
        raise ValueError("bit position must be >= 0")
    mask = (1 << _ACC_BITS) - 1
    acc = 0
    for part in formula.parts:
        cutoff = bit_pos // part.base_bits + 1
        if workers > 1 and cutoff > 4096:
            chunks = 2 * workers
            bounds = [cutoff * i // chunks for i in range(chunks + 1)]
            jobs = [(part, bit_pos, bounds[i], bounds[i + 1]) for i in range(chunks)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for piece in pool.map(_part_chunk_star, jobs):
                    acc = (acc + piece) & mask
        else:
            acc = (acc + _part_chunk(part, bit_pos, 0, cutoff)) & mask
        acc = (acc + _part_tail(part, bit_pos, cutoff)) & mask
    return acc


def _part_chunk_star(args):
    return _part_chunk(*args)


def extract_digits(formula: BBPFormula, position: int, count: int, workers: int = 1) -> str:
    """`count` base-b digits of the target constant starting at fractional
    position+1, without computing earlier digits."""
    if count < 0:
        raise ValueError("count must be >= 0")
    g = formula.base_bits
    if count * g > 60:
        raise PrecisionError(
            f"{count} base-{1 << g} digits exceed the 60-bit guard budget"
        )
    if count == 0:
        return ""
    # Accumulator roundoff: one ulp per finite-sum term. Refuse if that
    # noise could reach the requested digits plus an 8-bit margin.
    n_terms = sum(position * g // p.base_bits + 40 for p in formula.parts)
    if n_terms.bit_length() > _ACC_BITS - count * g - 8:
        raise PrecisionError(f"position {position} exhausts the guard bits")
    acc = extract_bits(formula, position * g, workers)
    out = []
    for i in range(1, count + 1):
        out.append(_HEX[(acc >> (_ACC_BITS - g * i)) & ((1 << g) - 1)])
    return "".join(out)


def _part_value(part: BBPPart, prec: int) -> BigFixed:
    f = prec + 96
    total = 0
    n = 0
    while True:
        shift = f - part.base_bits * n
        if shift < 0:
            break
        sign = -1 if (part.alternating and n & 1) else 1
        row = part.period * n
        for j, a in enumerate(part.coeffs, start=1):
            if a == 0:
                continue
            term = (abs(a) << shift) // (row + j) ** part.power
            total += term if sign * a > 0 else -term
        n += 1
    return BigFixed(total, f, prec) * BigFixed.from_fraction(part.scale, prec)


def validate_full(formula: BBPFormula, prec: int):
    """Sum the series directly at full precision and compare to its target.

    Returns (value, target, abs_error).
    """
    from . import reference

    value = BigFixed.from_int(0, prec)
    for part in formula.parts:
        value = value + _part_value(part, prec)
    if formula.target == "pi":
        target = reference.pi_bigfixed(prec)
    elif formula.target == "pi_sqrt3":
        target = reference.pi_bigfixed(prec + 8) * sqrt(BigFixed.from_int(3, prec + 8), prec + 8)
    elif formula.target == "pi_squared":
        target = reference.pi_power(2, prec)
    else:
        raise ValueError(f"unknown target {formula.target!r}")
    return value, target, abs(value - target)


FORMULAS: dict[str, BBPFormula] = {
    f.id: f
    for f in [
        BBPFormula(
            "bbp16",
            (BBPPart(4, 8, (4, 0, 0, -2, -1, -1, 0, 0), False, Fraction(1)),),
            "pi",
            "the original base-16 digit-extraction formula (1995)",
        ),
        BBPFormula(
            "adamchik4",
            (BBPPart(2, 4, (2, 2, 1, 0), True, Fraction(1)),),
            "pi",
            "Adamchik and Wagon, alternating base-4 formula",
        ),
        BBPFormula(
            "bellard",
            (
                BBPPart(2, 2, (1, 0), True, Fraction(4)),
                BBPPart(10, 4, (32, 8, 1, 0), True, Fraction(-1, 64)),
            ),
            "pi",
            "Bellard 1997, the fast mixed base-4/base-1024 pair",
        ),
        BBPFormula(
            "pi_sqrt3",
            (BBPPart(6, 6, (16, 8, 0, -2, -1, 0), False, Fraction(9, 32)),),
            "pi_sqrt3",
            "base-64 formula for pi * sqrt(3)",
        ),
        BBPFormula(
            "pi_squared",
            (BBPPart(6, 6, (16, -24, -8, -6, 1, 0), False, Fraction(9, 8), power=2),),
            "pi_squared",
            "base-64 formula for pi**2; squared poles, so validate-only",
        ),
    ]
}


def log_inv_series(x_num: int, x_den: int, prec: int) -> BigFixed:
    """log(1 / (1 - x)) for rational 0 < x < 1 via sum x**n / n."""
    if not 0 < x_num < x_den:
        raise ValueError("series needs 0 < x < 1")
    f = prec + 96
    power = (x_num << f) // x_den
    total = 0
    n = 1
    while power:
        total += power // n
        power = power * x_num // x_den
        n += 1
    return BigFixed(total, f, prec)


def ln2_value(prec: int) -> BigFixed:
    """log 2 summed from n = 1 (the n = 0 term of the printed warm-up form
    is undefined, so the demonstration starts at 1)."""
    return log_inv_series(1, 2, prec)


def extract_ln2_bits(position: int, count: int) -> str:
    """Binary digits of log 2 at fractional position+1 by the same split."""
    if count < 0:
        raise ValueError("count must be >= 0")
    if count > 60:
        raise PrecisionError("count exceeds the 60-bit guard budget")
    if count == 0:
        return ""
    mask = (1 << _ACC_BITS) - 1
    acc = 0
    for n in range(1, position + 1):
        num = pow(2, position - n, n) if n > 1 else 0
        acc = (acc + ((num << _ACC_BITS) // n)) & mask
    n = position + 1
    while True:
        shift = _ACC_BITS + position - n
        if shift < -8:
            break
        term = (1 << max(0, shift)) // n
        if shift < 0:
            term >>= -shift
        acc = (acc + term) & mask
        n += 1
    return "".join(str((acc >> (_ACC_BITS - i)) & 1) for i in range(1, count + 1))
