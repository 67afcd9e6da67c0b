"""Catalog of classical identities with one shared evaluator.

Entries are declarative records: a term rule (series), a factor rule
(products), partial numerators and denominators (continued fractions), or
a prime bound (the prime product), plus an affine transform and a target
constant expressed through reference pi. A single evaluator interprets
them, so every entry gets identical treatment in tests and reports.

Convergence here is mostly linear. Entries whose rate supports hundreds of
digits carry a digits-per-term estimate; the hopeless ones (a digit per
thousand terms or worse) are marked slow and ship with a pinned suite
depth and a frozen tail bound that the verify suite asserts instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from ..bigfixed import BigFixed, decimal_digits_to_bits, sqrt
from ..exactnum import binomial
from .. import reference

__all__ = ["CatalogEntry", "EvalResult", "CATALOG", "catalog_eval", "catalog_listing", "sieve_primes"]


@dataclass(frozen=True)
class EvalResult:
    value: BigFixed
    target: BigFixed
    abs_error: BigFixed
    exact_value: Fraction | None = None  # set when the evaluation was exact end to end


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str  # series | product | continued_fraction | prime_product
    target: tuple  # (coefficient, pi power, radicand): coef * pi**power * sqrt(d)
    provenance: str
    term: Callable | None = None  # series: n -> Fraction
    start: int = 0
    factors: Callable | None = None  # product: (count, prec) -> list of Fraction | BigFixed
    cf_head: int = 0  # continued fraction: leading integer
    cf_num: Callable | None = None  # k -> partial numerator (k >= 1)
    cf_den: Callable | None = None  # k -> partial denominator (k >= 1)
    transform: tuple = ()  # ((add_r, add_d), ..., ) pairs added after scaling
    scale: tuple = (Fraction(1), 1)  # (r, d): multiply accumulation by r * sqrt(d)
    alternating: bool = False
    digits_per_term: float | None = None  # None marks the slow class
    suite_terms: int = 2000  # depth used by the identity suite
    suite_bound: float | None = None  # frozen |error| bound at suite_terms (slow class)
    note: str = ""


def _harmonic_terms(power_h: int, power_n: int):
    state = {"n": 0, "h": Fraction(0)}

    def term(n):
        while state["n"] < n:
            state["n"] += 1
            state["h"] += Fraction(1, state["n"])
        if state["n"] != n:  # out-of-order access: recompute from scratch
            state["n"] = 0
            state["h"] = Fraction(0)
            return term(n)
        return state["h"] ** power_h / Fraction(n) ** power_n

    return term


def sieve_primes(bound: int) -> list[int]:
    """Primes below `bound` by a byte sieve; supports bounds up to 10**7."""
    if bound > 10**7 + 1:
        raise ValueError("prime bound above 1e7 is not supported")
    if bound <= 2:
        return []
    flags = bytearray([1]) * bound
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound - 1) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(range(p * p, bound, p))
    return [i for i in range(bound) if flags[i]]


def _product_tree(values: list[int]) -> int:
    if not values:
        return 1
    while len(values) > 1:
        values = [values[i] * values[i + 1] for i in range(0, len(values) - 1, 2)] + (
            [values[-1]] if len(values) % 2 else []
        )
    return values[0]


def _nested_radical_factors(count: int, prec: int) -> list[BigFixed]:
    """First `count` factors of the nested square-root product for 2/pi."""
    half = BigFixed.from_ratio(1, 2, prec)
    out = []
    r = sqrt(half, prec)
    for _ in range(count):
        out.append(r)
        r = sqrt(half + r.mul_pow2(-1), prec)
    return out


def _wallis_factor(j: int) -> Fraction:
    # 1/2, 3/2, 3/4, 5/4, 5/6, 7/6, ...
    return Fraction(j, j + 1) if j % 2 else Fraction(j + 1, j)


def _wallis_factors(count: int, prec: int) -> list[Fraction]:
    return [_wallis_factor(j) for j in range(1, count + 1)]


def _osler_factors(p: int):
    def factors(count: int, prec: int) -> list:
        head = _nested_radical_factors(min(p, count), prec)
        out: list = list(head)
        scale = 1 << (p + 1)
        for j in range(p + 1, count + 1):
            m = (j - p + 1) // 2
            out.append(
                Fraction(scale * m - 1, scale * m) if (j - p) % 2 else Fraction(scale * m + 1, scale * m)
            )
        return out

    return factors


def _sondow_factors(count: int, prec: int) -> list[BigFixed]:
    """Factors [prod (k+1)**((-1)**(k+1) C(n,k))] ** (1/2**n) for n = 0, 1, ...

    Computed as iterated square roots of each base followed by an integer
    power; binomial exponents up to C(40, 20) cost under 40 extra bits, so
    the working precision adds a flat 56.
    """
    work = prec + 56
    out = []
    for n in range(count):
        num = BigFixed.from_int(1, work)
        den = BigFixed.from_int(1, work)
        for k in range(1, n + 1):
            root = BigFixed.from_int(k + 1, work)
            for _ in range(n):
                root = sqrt(root, work)
            piece = root ** binomial(n, k)
            if k % 2 == 1:
                num = num * piece
            else:
                den = den * piece
        out.append(num / den)
    return out


def _surd_value(pairs, prec: int) -> BigFixed:
    total = BigFixed.from_int(0, prec)
    for r, d in pairs:
        piece = BigFixed.from_fraction(Fraction(r), prec)
        if d != 1:
            piece = piece * sqrt(BigFixed.from_int(d, prec), prec)
        total = total + piece
    return total


def _target_value(entry: CatalogEntry, prec: int) -> BigFixed:
    coef, power, d = entry.target
    if power > 0:
        value = reference.pi_power(power, prec + 8)
    elif power < 0:
        value = BigFixed.from_int(1, prec + 8) / reference.pi_power(-power, prec + 8)
    else:
        value = BigFixed.from_int(1, prec + 8)
    value = value * BigFixed.from_fraction(Fraction(coef), prec + 8)
    if d != 1:
        value = value * sqrt(BigFixed.from_int(d, prec + 8), prec + 8)
    return value


def catalog_eval(entry_id: str, terms_or_depth: int, prec: int) -> EvalResult:
    """Evaluate an entry and compare with its independently derived target."""
    entry = CATALOG.get(entry_id)
    if entry is None:
        raise KeyError(f"unknown catalog entry {entry_id!r}")
    if terms_or_depth < 1:
        raise ValueError("terms_or_depth must be >= 1")
    exact: Fraction | None = None
    if entry.kind == "series":
        f = prec + 96
        total = 0
        for n in range(entry.start, entry.start + terms_or_depth):
            t = entry.term(n)
            total += (t.numerator << f) // t.denominator
        acc = BigFixed(total, f, prec)
    elif entry.kind == "product":
        pieces = entry.factors(terms_or_depth, prec + 32)
        if all(isinstance(p, Fraction) for p in pieces):
            exact = math.prod(pieces, start=Fraction(1))
            acc = BigFixed.from_fraction(exact, prec)
        else:
            acc = BigFixed.from_int(1, prec + 32)
            for p in pieces:
                acc = acc * (BigFixed.from_fraction(p, prec + 32) if isinstance(p, Fraction) else p)
    elif entry.kind == "continued_fraction":
        tail = Fraction(entry.cf_num(terms_or_depth), entry.cf_den(terms_or_depth))
        for k in range(terms_or_depth - 1, 0, -1):
            tail = Fraction(entry.cf_num(k)) / (entry.cf_den(k) + tail)
        exact = entry.cf_head + tail
        acc = BigFixed.from_fraction(exact, prec)
    elif entry.kind == "prime_product":
        primes = sieve_primes(terms_or_depth)
        num = _product_tree([p * p for p in primes])
        den = _product_tree([p * p - 1 for p in primes])
        acc = BigFixed.from_ratio(num, den, prec)
        exact = None  # exact value exists but is enormous; keep the report light
    else:
        raise ValueError(f"bad entry kind {entry.kind!r}")

    r, d = entry.scale
    if (r, d) != (Fraction(1), 1):
        acc = acc * _surd_value([(r, d)], prec + 16)
        exact = None if d != 1 else exact
    if entry.transform:
        acc = acc + _surd_value(entry.transform, prec + 16)
        exact = None
    target = _target_value(entry, prec)
    return EvalResult(acc, target, abs(acc - target), exact)


def catalog_listing() -> list[dict]:
    """Structured export of the catalog for reports."""
    out = []
    for e in CATALOG.values():
        coef, power, d = e.target
        out.append(
            {
                "id": e.id,
                "kind": e.kind,
                "provenance": e.provenance,
                "digits_per_term": e.digits_per_term,
                "target": f"{coef} * pi^{power}" + (f" * sqrt({d})" if d != 1 else ""),
                "note": e.note,
            }
        )
    return out


_F1 = Fraction(1)

CATALOG: dict[str, CatalogEntry] = {
    e.id: e
    for e in [
        CatalogEntry(
            "viete", "product", (Fraction(2), -1, 1), "Viete 1593, nested square roots",
            factors=_nested_radical_factors, digits_per_term=0.60, suite_terms=340,
        ),
        CatalogEntry(
            "wallis", "product", (Fraction(2), -1, 1), "Wallis 1655, rational product",
            factors=_wallis_factors, suite_terms=4000, suite_bound=1e-4,
        ),
        CatalogEntry(
            "newton_binom", "series", (Fraction(1), 1, 1), "Newton 1665, binomial sum",
            term=lambda n: Fraction(binomial(2 * n, n), (n + 1) * (2 * n + 5) * 16**n),
            scale=(Fraction(-3, 4), 1),
            transform=((Fraction(2), 1), (Fraction(3, 4), 3)),
            digits_per_term=0.60, suite_terms=340,
        ),
        CatalogEntry(
            "binom_pi3", "series", (Fraction(1, 3), 1, 1),
            "arcsine binomial sum at x = 1/4",
            term=lambda n: Fraction(binomial(2 * n, n), (2 * n + 1) * 16**n),
            digits_per_term=0.60, suite_terms=340,
            note="summed from n = 0; the n = 1 lower limit sometimes quoted "
            "drops the leading 1 and misses the stated value (suspected typo)",
        ),
        CatalogEntry(
            "comtet", "series", (Fraction(1), 4, 1), "Comtet 1974, inverse central binomials",
            term=lambda n: Fraction(1, n**4 * binomial(2 * n, n)),
            start=1, scale=(Fraction(3240, 17), 1),
            digits_per_term=0.60, suite_terms=340,
        ),
        CatalogEntry(
            "leibniz", "series", (Fraction(1, 4), 1, 1), "Leibniz 1674, alternating odd reciprocals",
            term=lambda n: Fraction((-1) ** n, 2 * n + 1),
            alternating=True, suite_terms=5000, suite_bound=1.1e-4,
        ),
        CatalogEntry(
            "sharp", "series", (Fraction(1, 6), 1, 1), "Sharp 1699, arctangent series at 1/sqrt(3)",
            term=lambda n: Fraction((-1) ** n, (2 * n + 1) * 3**n),
            scale=(Fraction(1, 3), 3), alternating=True,
            digits_per_term=0.477, suite_terms=430,
        ),
        CatalogEntry(
            "brouncker", "continued_fraction", (Fraction(4), -1, 1),
            "Brouncker 1665, odd-square continued fraction",
            cf_head=1, cf_num=lambda k: (2 * k - 1) ** 2, cf_den=lambda k: 2,
            suite_terms=4000, suite_bound=1e-3,
        ),
        CatalogEntry(
            "lange", "continued_fraction", (Fraction(1), 1, 1),
            "Lange 1999, odd-square continued fraction over 6",
            cf_head=3, cf_num=lambda k: (2 * k - 1) ** 2, cf_den=lambda k: 6,
            suite_terms=4000, suite_bound=1e-9,
        ),
        CatalogEntry(
            "zeta2", "series", (Fraction(1, 6), 2, 1), "Euler 1736, sum of inverse squares",
            term=lambda n: Fraction(1, n * n), start=1,
            suite_terms=4000, suite_bound=2.6e-4,
        ),
        CatalogEntry(
            "zeta2_odd", "series", (Fraction(1, 8), 2, 1), "Euler, inverse odd squares",
            term=lambda n: Fraction(1, (2 * n + 1) ** 2),
            suite_terms=4000, suite_bound=7e-5,
            note="summed from n = 0; a printed lower limit of n = 1 would drop "
            "the leading 1 (suspected typo)",
        ),
        CatalogEntry(
            "zeta4", "series", (Fraction(1, 90), 4, 1), "Euler, sum of inverse fourth powers",
            term=lambda n: Fraction(1, n**4), start=1,
            suite_terms=2000, suite_bound=5e-11,
        ),
        CatalogEntry(
            "zeta3_alt", "series", (Fraction(1, 32), 3, 1), "Euler, alternating inverse odd cubes",
            term=lambda n: Fraction((-1) ** n, (2 * n + 1) ** 3),
            alternating=True, suite_terms=2000, suite_bound=2e-11,
        ),
        CatalogEntry(
            "euler_harmonic_cubed", "series", (Fraction(1, 72), 4, 1),
            "Euler sum: harmonic numbers over cubes",
            term=_harmonic_terms(1, 3), start=1,
            suite_terms=2000, suite_bound=2.2e-6,
        ),
        CatalogEntry(
            "sandham", "series", (Fraction(17, 360), 4, 1),
            "Sandham 1950, rediscovered by Au Yeung: squared harmonic numbers over squares",
            term=_harmonic_terms(2, 2), start=1,
            suite_terms=2000, suite_bound=0.06,
        ),
        CatalogEntry(
            "prime_product", "prime_product", (Fraction(1, 6), 2, 1),
            "Euler product over primes",
            suite_terms=10**6, suite_bound=1e-6,
        ),
        CatalogEntry(
            "osler_0", "product", (Fraction(2), -1, 1),
            "Osler 1999 unified product, p = 0 (pure rational tail)",
            factors=_osler_factors(0), suite_terms=4000, suite_bound=1e-4,
        ),
        CatalogEntry(
            "osler_1", "product", (Fraction(2), -1, 1),
            "Osler 1999 unified product, p = 1",
            factors=_osler_factors(1), suite_terms=4001, suite_bound=5e-5,
        ),
        CatalogEntry(
            "osler_2", "product", (Fraction(2), -1, 1),
            "Osler 1999 unified product, p = 2 (one new formula)",
            factors=_osler_factors(2), suite_terms=4002, suite_bound=3e-5,
        ),
        CatalogEntry(
            "sondow", "product", (Fraction(1, 2), 1, 1),
            "Sondow 2002, binomial-exponent radical product",
            factors=_sondow_factors, suite_terms=40, suite_bound=1e-12,
        ),
    ]
}
