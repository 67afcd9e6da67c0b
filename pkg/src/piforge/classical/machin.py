"""Arctangent series and Machin-style formulas with exact validation.

A formula sum(c_j * arctan(1/m_j)) = t * pi/4 is proved, not spot-checked:
the Gaussian-integer product of (m_j + i)**c_j must be a positive real
multiple of (1 + i)**t. That settles the identity modulo 2*pi; a coarse
float winding check pins down the multiple. Evaluation refuses to run on a
formula that has not passed validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..bigfixed import BigFixed, decimal_digits_to_bits
from ..exactnum import GaussianInt, gaussian_powprod

__all__ = [
    "MachinFormula",
    "ValidationResult",
    "arctan_recip",
    "machin_validate",
    "machin_eval",
    "MACHIN_FORMULAS",
]


@dataclass(frozen=True)
class MachinFormula:
    id: str
    terms: tuple  # ((coefficient, m), ...) meaning coefficient * arctan(1/m)
    target_quarters: int = 1  # t in sum = t * pi/4
    note: str = ""


@dataclass(frozen=True)
class ValidationResult:
    passed: bool
    detail: str
    witness: tuple  # (numerator, denominator, test_product) as GaussianInts


def arctan_recip(m: int, prec: int) -> BigFixed:
    """arctan(1/m) by the alternating odd-reciprocal series.

    Summation stops once a term drops below 2**-(prec+8); the truncation
    error is bounded by that first omitted term. m = 1 is allowed but gains
    under a digit per thousand terms, so callers should know what they ask.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    f = prec + 72
    if m == 1:
        limit = 1 << (f - prec - 8)
        total = 0
        k = 0
        while True:
            term = (1 << f) // (2 * k + 1)
            if term <= limit:
                break
            total += term if k % 2 == 0 else -term
            k += 1
        return BigFixed(total, f, prec)
    msq = m * m
    power = (1 << f) // m
    total = 0
    k = 0
    while power:
        term = power // (2 * k + 1)
        if not term and 2 * k + 1 > msq:
            break
        total += term if k % 2 == 0 else -term
        power //= msq
        k += 1
    return BigFixed(total, f, prec)


def machin_validate(formula: MachinFormula) -> ValidationResult:
    """Exact Gaussian-integer check that the formula's arguments add up."""
    num, den = gaussian_powprod(
        [(GaussianInt(m, 1), c) for c, m in formula.terms]
    )
    t = formula.target_quarters
    z = num * den.conjugate()
    if t >= 0:
        probe = z * GaussianInt(1, -1) ** t
    else:
        probe = z * GaussianInt(1, 1) ** (-t)
    if probe.im != 0 or probe.re <= 0:
        return ValidationResult(
            False,
            f"{formula.id}: product argument is not {t} * pi/4",
            (num, den, probe),
        )
    # Winding check: the arctangent sum itself must land on t*pi/4, not
    # t*pi/4 plus a multiple of 2*pi. Float accuracy is ample for that.
    approx = sum(c * math.atan2(1, m) for c, m in formula.terms)
    if abs(approx - t * math.pi / 4) > 1e-6:
        return ValidationResult(
            False,
            f"{formula.id}: argument matches only modulo 2*pi",
            (num, den, probe),
        )
    return ValidationResult(True, f"{formula.id}: ok", (num, den, probe))


def machin_eval(formula: MachinFormula, digits: int) -> BigFixed:
    """pi from a validated formula, correct to at least `digits` decimals."""
    check = machin_validate(formula)
    if not check.passed:
        raise ValueError(f"refusing to evaluate an invalid formula: {check.detail}")
    prec = decimal_digits_to_bits(digits) + 24
    total = BigFixed.from_int(0, prec)
    for c, m in formula.terms:
        total = total + arctan_recip(m, prec) * c
    return total.mul_pow2(2) / formula.target_quarters


MACHIN_FORMULAS: dict[str, MachinFormula] = {
    f.id: f
    for f in [
        MachinFormula("machin", ((4, 5), (-1, 239)), 1, "Machin 1706; first 100 digits"),
        MachinFormula("two_term_2_3", ((1, 2), (1, 3)), 1, "two-term identity, arctan 1/2 + arctan 1/3"),
        MachinFormula("two_term_3_7", ((2, 3), (1, 7)), 1, "two-term identity, 2 arctan 1/3 + arctan 1/7"),
        MachinFormula("gauss", ((12, 18), (8, 57), (-5, 239)), 1, "Gauss three-term formula"),
        MachinFormula(
            "takano", ((12, 49), (32, 57), (-5, 239), (12, 110443)), 1,
            "Takano 1982; used for a record computation in 2002",
        ),
        MachinFormula(
            "stormer", ((44, 57), (7, 239), (-12, 682), (24, 12943)), 1,
            "Stormer 1896; used for a record computation in 2002",
        ),
    ]
}
