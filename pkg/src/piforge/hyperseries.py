"""Binary-splitting engine for fast hypergeometric-style series.

Every series here has terms A(n) * H(n) * z**n * aux(n) where H(n) is a
ratio of factorials of 2n, 3n, 4n, 6n and n, z is an exact rational or
quadratic surd (sign included), A is a short polynomial with rational or
surd coefficients, and aux is an optional integer sequence (Apery numbers
or the w convolution numbers). The term ratio is then an exact scalar per
index, which is all binary splitting needs: P/Q/T accumulators merge
associatively and the partial sum T/Q is exact, so results are
bit-identical no matter how the range is chunked across workers.

Each spec records its digits-per-term rate; stored values were measured
from term decay at build time (two are also documented constants of the
series themselves) and the test suite re-measures them.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .bigfixed import GUARD_BITS, BigFixed, decimal_digits_to_bits, sqrt
from .exactnum import QuadSurd, binomial

__all__ = [
    "SeriesSpec",
    "SplitNode",
    "term",
    "aux",
    "binary_split",
    "combine",
    "split_partial_sum",
    "terms_for_digits",
    "plan_terms",
    "sum_to_digits",
    "measure_dpt",
    "prefactor_value",
    "SPEC_CATALOG",
    "catalog_report",
]


@dataclass(frozen=True)
class SeriesSpec:
    """Declarative description of one series summing to C / pi**s."""

    id: str
    # factorial shape: exponents of (2n)!, (3n)!, (4n)!, (6n)!, n!
    e2: int
    e3: int
    e4: int
    e6: int
    e1: int
    base: Fraction | QuadSurd
    multiplier: tuple  # polynomial coefficients, constant term first
    prefactor: tuple  # ((r, d), ...) meaning C = sum of r * sqrt(d)
    target_power: int  # s in 1/pi**s
    aux_sequence: str | None  # None, "apery_u", "zudilin_w"
    dpt: float  # decimal digits gained per term
    note: str = ""


@dataclass(frozen=True)
class SplitNode:
    """Range accumulators for [a, b): partial sum is t / q, exactly."""

    p: object  # int, or (x, y) meaning x + y*sqrt(d)
    q: int
    t: object
    d: int | None  # radicand for surd-valued p and t, None for the int path


# -- aux integer sequences -------------------------------------------------

_apery_cache: list[int] = []
_w_cache: list[int] = []
_w_parts: tuple[list[int], list[int]] = ([], [])


def _apery_u(n: int) -> int:
    while len(_apery_cache) <= n:
        m = len(_apery_cache)
        _apery_cache.append(
            sum(binomial(m, k) ** 2 * binomial(m + k, k) ** 2 for k in range(m + 1))
        )
    return _apery_cache[n]


def _zudilin_w(n: int) -> int:
    a, b = _w_parts
    while len(a) <= n:
        k = len(a)
        a.append(binomial(2 * k, k) ** 3)
        b.append(binomial(2 * k, k) * 16**k)
    while len(_w_cache) <= n:
        m = len(_w_cache)
        _w_cache.append(sum(a[k] * b[m - k] for k in range(m + 1)))
    return _w_cache[n]


_AUX = {"apery_u": _apery_u, "zudilin_w": _zudilin_w}


def aux(kind: str, n: int) -> int:
    """Auxiliary integer sequences used by the Sato and w-number series."""
    if kind not in _AUX:
        raise ValueError(f"unknown aux sequence {kind!r}")
    if n < 0:
        raise ValueError("index must be nonnegative")
    return _AUX[kind](n)


# -- exact term evaluation (the slow, direct route used as the oracle) -----


def _hyper_factor(spec: SeriesSpec, n: int) -> Fraction:
    num = 1
    den = 1
    for e, k in ((spec.e2, 2), (spec.e3, 3), (spec.e4, 4), (spec.e6, 6), (spec.e1, 1)):
        if e == 0:
            continue
        f = math.factorial(k * n)
        if e > 0:
            num *= f**e
        else:
            den *= f**-e
    return Fraction(num, den)


def _poly_eval(coeffs: tuple, n: int):
    out = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        out = out * n + c
    return out


def term(spec: SeriesSpec, n: int):
    """Exact n-th summand before the prefactor: multiplier * factorials * z**n."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    value = _poly_eval(spec.multiplier, n) * _hyper_factor(spec, n) * spec.base**n
    if spec.aux_sequence:
        value = value * aux(spec.aux_sequence, n)
    return value


# -- binary splitting -------------------------------------------------------


def _surd_base_parts(base: QuadSurd) -> tuple[int, int, int]:
    """Normalize a surd base to (x, y, den) with x + y*sqrt(d) over den."""
    den = math.lcm(base.a.denominator, base.b.denominator)
    return int(base.a * den), int(base.b * den), den


def _ratio(spec: SeriesSpec, n: int):
    """term(n) / term(n-1) without the multiplier, as (num, den).

    num is an int or an (x, y) surd pair; den is a positive int. The
    polynomial multiplier is applied separately at the leaves.
    """
    num = 1
    den = 1
    for e, k in ((spec.e2, 2), (spec.e3, 3), (spec.e4, 4), (spec.e6, 6), (spec.e1, 1)):
        if e == 0:
            continue
        block = 1
        for j in range(k * n - k + 1, k * n + 1):
            block *= j
        if e > 0:
            num *= block**e
        else:
            den *= block**-e
    if spec.aux_sequence:
        fn = _AUX[spec.aux_sequence]
        num *= fn(n)
        den *= fn(n - 1)
    if isinstance(spec.base, QuadSurd):
        x, y, zd = _surd_base_parts(spec.base)
        return (num * x, num * y), den * zd
    num *= spec.base.numerator
    den *= spec.base.denominator
    if den < 0:
        num, den = -num, -den
    return num, den


def _smul(a, b, d):
    """Product in Z or Z[sqrt(d)], operands ints or (x, y) pairs."""
    a_pair = isinstance(a, tuple)
    b_pair = isinstance(b, tuple)
    if not a_pair and not b_pair:
        return a * b
    if not a_pair:
        return (a * b[0], a * b[1])
    if not b_pair:
        return (a[0] * b, a[1] * b)
    return (a[0] * b[0] + a[1] * b[1] * d, a[0] * b[1] + a[1] * b[0])


def _sadd(a, b):
    if isinstance(a, tuple) or isinstance(b, tuple):
        if not isinstance(a, tuple):
            a = (a, 0)
        if not isinstance(b, tuple):
            b = (b, 0)
        return (a[0] + b[0], a[1] + b[1])
    return a + b


def _leaf_multiplier(spec: SeriesSpec, n: int):
    value = _poly_eval(spec.multiplier, n)
    if isinstance(value, QuadSurd):
        if value.a.denominator != 1 or value.b.denominator != 1:
            raise ValueError("surd multipliers must have integer coefficients")
        return (int(value.a), int(value.b))
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise ValueError("rational multipliers must have integer coefficients")
        return int(value)
    return value


def _spec_radicand(spec: SeriesSpec) -> int | None:
    if isinstance(spec.base, QuadSurd):
        return spec.base.d
    for c in spec.multiplier:
        if isinstance(c, QuadSurd):
            return c.d
    return None


def combine(spec: SeriesSpec, left: SplitNode, right: SplitNode) -> SplitNode:
    d = left.d
    return SplitNode(
        _smul(left.p, right.p, d),
        left.q * right.q,
        _sadd(_smul(left.t, right.q, d), _smul(left.p, right.t, d)),
        d,
    )


def binary_split(spec: SeriesSpec, a: int, b: int) -> SplitNode:
    """Accumulators over [a, b); requires a < b."""
    if a >= b:
        raise ValueError("empty range")
    if b - a == 1:
        d = _spec_radicand(spec)
        if a == 0:
            return SplitNode(1, 1, _leaf_multiplier(spec, 0), d)
        num, den = _ratio(spec, a)
        return SplitNode(num, den, _smul(_leaf_multiplier(spec, a), num, d), d)
    mid = (a + b) // 2
    return combine(spec, binary_split(spec, a, mid), binary_split(spec, mid, b))


def _node_sum(node: SplitNode):
    """Exact partial sum represented by a node rooted at 0."""
    if node.d is None:
        return Fraction(node.t, node.q)
    x, y = node.t if isinstance(node.t, tuple) else (node.t, 0)
    return QuadSurd(Fraction(x, node.q), Fraction(y, node.q), node.d)


def split_partial_sum(spec: SeriesSpec, n_terms: int, workers: int = 1):
    """Exact sum of terms 0 .. n_terms-1 via (optionally parallel) splitting."""
    if n_terms < 1:
        raise ValueError("need at least one term")
    if workers <= 1 or n_terms < 64:
        return _node_sum(binary_split(spec, 0, n_terms))
    chunks = min(2 * workers, n_terms)
    bounds = [n_terms * i // chunks for i in range(chunks + 1)]
    ranges = [(spec, bounds[i], bounds[i + 1]) for i in range(chunks)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        nodes = list(pool.map(_split_star, ranges))
    node = nodes[0]
    for other in nodes[1:]:
        node = combine(spec, node, other)
    return _node_sum(node)


def _split_star(args):
    return binary_split(*args)


def terms_for_digits(spec: SeriesSpec, digits: int) -> int:
    return math.ceil(digits / spec.dpt) + 2


def _log10_term_estimate(spec: SeriesSpec, n: int) -> float:
    """Coarse float estimate of log10 |term(n)|, good to a fraction of a digit."""
    lg = 0.0
    for e, k in ((spec.e2, 2), (spec.e3, 3), (spec.e4, 4), (spec.e6, 6), (spec.e1, 1)):
        if e:
            lg += e * math.lgamma(k * n + 1) / math.log(10)
    if isinstance(spec.base, QuadSurd):
        z = float(spec.base.a) + float(spec.base.b) * math.sqrt(spec.base.d)
    else:
        z = spec.base.numerator / spec.base.denominator
    lg += n * math.log10(abs(z))
    mult = _poly_eval(spec.multiplier, n)
    if isinstance(mult, QuadSurd):
        mult = float(mult.a) + float(mult.b) * math.sqrt(mult.d)
    if mult:
        lg += math.log10(abs(mult))
    if spec.aux_sequence:
        lg += (aux(spec.aux_sequence, n).bit_length() - 1) * math.log10(2)
    return lg


def plan_terms(spec: SeriesSpec, digits: int) -> int:
    """Term count for `digits` decimals: the dpt-based count, extended when a
    polynomial factor in the terms makes the pure geometric model optimistic."""
    n = terms_for_digits(spec, digits)
    while _log10_term_estimate(spec, n) > -(digits + 2):
        n += max(1, math.ceil(2 / spec.dpt))
    return n


def prefactor_value(spec: SeriesSpec, prec: int) -> BigFixed:
    """The exact constant C with sum = C / pi**s, evaluated numerically."""
    total = BigFixed.from_int(0, prec)
    for r, d in spec.prefactor:
        piece = BigFixed.from_fraction(Fraction(r), prec)
        if d != 1:
            piece = piece * sqrt(BigFixed.from_int(d, prec), prec)
        total = total + piece
    return total


def sum_to_digits(spec: SeriesSpec, digits: int, workers: int = 1) -> BigFixed:
    """pi**s recovered from the series, correct to at least `digits` decimals."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    prec = decimal_digits_to_bits(digits) + 16
    n_terms = plan_terms(spec, digits)
    partial = split_partial_sum(spec, n_terms, workers)
    if isinstance(partial, QuadSurd):
        value = partial.to_bigfixed(prec)
    else:
        value = BigFixed.from_fraction(partial, prec)
    return prefactor_value(spec, prec) / value


def _log10_abs(x: BigFixed) -> float:
    m = abs(x.mantissa)
    if m == 0:
        raise ValueError("log of zero")
    b = m.bit_length()
    drop = max(0, b - 53)
    return (math.log2(m >> drop) + drop - x.frac_bits) * math.log10(2)


def measure_dpt(spec: SeriesSpec, lo: int = 100, hi: int = 160) -> float:
    """Empirical digits-per-term from the decay of partial-sum errors."""
    digits = int(hi * spec.dpt) + 60
    prec = decimal_digits_to_bits(digits) + 32

    def partial(n):
        s = split_partial_sum(spec, n)
        if isinstance(s, QuadSurd):
            return s.to_bigfixed(prec)
        return BigFixed.from_fraction(s, prec)

    best = partial(hi + 24)
    err_lo = abs(best - partial(lo))
    err_hi = abs(best - partial(hi))
    return (_log10_abs(err_lo) - _log10_abs(err_hi)) / (hi - lo)


def _fr(n, d=1):
    return Fraction(n, d)


SPEC_CATALOG: dict[str, SeriesSpec] = {
    s.id: s
    for s in [
        SeriesSpec(
            "rama_6n1", 3, 0, 0, 0, -6, _fr(1, 2**8), (1, 6), ((4, 1),), 1, None,
            0.60206, "Ramanujan 1914, multiplier 6n+1, base 1/2^8",
        ),
        SeriesSpec(
            "rama_42n5", 3, 0, 0, 0, -6, _fr(1, 2**12), (5, 42), ((16, 1),), 1, None,
            1.80618, "Ramanujan 1914, multiplier 42n+5, base 1/2^12",
        ),
        SeriesSpec(
            "rama_surd", 3, 0, 0, 0, -6,
            QuadSurd(_fr(47, 8192), _fr(-21, 8192), 5),
            (QuadSurd(-1, 5, 5), QuadSurd(30, 42, 5)),
            ((32, 1),), 1, None,
            3.47634, "Ramanujan 1914, surd base ((3-sqrt5)/16)^4",
        ),
        SeriesSpec(
            "rama_396", 0, 0, 1, 0, -4, _fr(1, 396**4), (1103, 26390),
            ((_fr(9801, 4), 2),), 1, None,
            7.98, "Ramanujan 1914 quartic-theory series, about 8 digits per term",
        ),
        SeriesSpec(
            "rama_1458", 1, 1, 0, 0, -5, _fr(1, 1458), (2, 15),
            ((_fr(27, 4), 1),), 1, None,
            1.13033, "Ramanujan 1914 cubic-theory series, base 1/1458",
        ),
        SeriesSpec(
            "rama_54000", 0, -1, 0, 1, -3, _fr(1, 54000), (1, 11),
            ((_fr(5, 6), 15),), 1, None,
            1.49485, "Ramanujan 1914 sextic-theory series, base 1/54000",
        ),
        SeriesSpec(
            "chudnovsky", 0, -1, 0, 1, -3, _fr(-1, 640320**3),
            (13591409, 545140134), ((426880, 10005),), 1, None,
            14.18, "Chudnovsky brothers 1988, 14+ digits per term",
        ),
        SeriesSpec(
            "chan_liaw_tan", 1, 1, 0, 0, -5, _fr(-1, 300**3), (827, 14151),
            ((1500, 3),), 1, None,
            5.39794, "Chan, Liaw and Tan 2001, base -1/300^3",
        ),
        SeriesSpec(
            "sato", 0, 0, 0, 0, 0, QuadSurd(161, -72, 5),
            (QuadSurd(10, -3, 5), 20),
            ((_fr(10, 3), 3), (_fr(3, 2), 15)), 1, "apery_u",
            0.97676, "Sato 2002, Apery-number series with golden-ratio base",
        ),
        SeriesSpec(
            "gui_20n2", 5, 0, 0, 0, -10, _fr(-1, 2**12), (1, 8, 20),
            ((8, 1),), 2, None,
            0.60206, "WZ-provable series for 1/pi^2, multiplier 20n^2+8n+1",
        ),
        SeriesSpec(
            "gui_820n2", 5, 0, 0, 0, -10, _fr(-1, 2**20), (13, 180, 820),
            ((128, 1),), 2, None,
            3.0103, "WZ-provable series for 1/pi^2, multiplier 820n^2+180n+13",
        ),
        SeriesSpec(
            "gui_2880", 0, 0, 0, 1, -6, _fr(-1, 2880**3), (29, 693, 5418),
            ((128, 5),), 2, None,
            5.70927, "conjectural series for 1/pi^2 (no proof known); verified numerically here",
        ),
        SeriesSpec(
            "gourevitch", 7, 0, 0, 0, -14, _fr(1, 2**20), (1, 14, 76, 168),
            ((32, 1),), 3, None,
            1.80618, "conjectural series for 1/pi^3 (no proof known); verified numerically here",
        ),
        SeriesSpec(
            "zudilin_5", -1, 0, 1, 0, -2, _fr(1, 2**8 * 5**2), (-3, -10, 18),
            ((10, 5),), 2, "zudilin_w",
            0.19382, "Zudilin, quadratic transformation of the 20n^2 series",
        ),
        SeriesSpec(
            "zudilin_41", -1, 0, 1, 0, -2, _fr(1, 5**4 * 41**2),
            (16032, 227104, 1046529),
            ((5**4 * 41, 41),), 2, "zudilin_w",
            2.40909, "Zudilin, quadratic transformation of the 820n^2 series",
        ),
    ]
}


def catalog_report() -> list[dict]:
    """Plain-data export of the series catalog for reports."""
    out = []
    for spec in SPEC_CATALOG.values():
        out.append(
            {
                "id": spec.id,
                "target": f"pi^{spec.target_power}",
                "digits_per_term": spec.dpt,
                "aux_sequence": spec.aux_sequence,
                "note": spec.note,
            }
        )
    return out
