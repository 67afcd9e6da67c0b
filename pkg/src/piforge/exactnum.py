"""Exact arithmetic foundation: integers, rationals, quadratic surds, Gaussian integers.

Big integers are Python ints and rationals are fractions.Fraction, which
already guarantee the canonical forms this package relies on (gcd-reduced,
positive denominator). The two custom types below stay exact under ring
operations: QuadSurd values a + b*sqrt(d) with a fixed radicand, and
GaussianInt complex integers. Everything here is immutable and safe to
share between workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "BigInt",
    "BigRational",
    "binomial",
    "QuadSurd",
    "quad_mul",
    "GaussianInt",
    "gaussian_powprod",
    "gaussian_div_exact",
]

BigInt = int
BigRational = Fraction


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), exact.

    Raises ValueError outside 0 <= k <= n instead of returning 0, so that
    index bugs in series code surface immediately.
    """
    if n < 0 or k < 0:
        raise ValueError(f"binomial arguments must be nonnegative, got ({n}, {k})")
    if k > n:
        raise ValueError(f"binomial requires k <= n, got ({n}, {k})")
    return math.comb(n, k)


def _squarefree(d: int) -> bool:
    if d % 4 == 0:
        return False
    p = 3
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 2
    return True


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class QuadSurd:
    """Exact value a + b*sqrt(d) with rational a, b and a fixed squarefree d >= 2.

    Arithmetic never mixes radicands; combining values over different d is
    a usage error, not something this type papers over.
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))
        if self.d < 2:
            raise ValueError(f"radicand must be >= 2, got {self.d}")
        if not _squarefree(self.d):
            raise ValueError(f"radicand must be squarefree, got {self.d}")

    def _check(self, other: "QuadSurd") -> None:
        if self.d != other.d:
            raise ValueError(f"mixed radicands: sqrt({self.d}) vs sqrt({other.d})")

    def __add__(self, other):
        if isinstance(other, QuadSurd):
            self._check(other)
            return QuadSurd(self.a + other.a, self.b + other.b, self.d)
        if isinstance(other, (int, Fraction)):
            return QuadSurd(self.a + other, self.b, self.d)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        if isinstance(other, QuadSurd):
            self._check(other)
            return QuadSurd(self.a - other.a, self.b - other.b, self.d)
        if isinstance(other, (int, Fraction)):
            return QuadSurd(self.a - other, self.b, self.d)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, QuadSurd):
            self._check(other)
            return QuadSurd(
                self.a * other.a + self.b * other.b * self.d,
                self.a * other.b + self.b * other.a,
                self.d,
            )
        if isinstance(other, (int, Fraction)):
            return QuadSurd(self.a * other, self.b * other, self.d)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = QuadSurd(Fraction(1), Fraction(0), self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.a, -self.b, self.d)

    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError("value has a nonzero surd part")
        return self.a

    def to_bigfixed(self, prec: int):
        """Evaluate numerically with absolute error below 2**-prec.

        The rational and surd parts may be enormous yet nearly cancel (that
        is how conjugate growth works), so the working precision scales with
        the component magnitude, not just the requested precision.
        """
        from .bigfixed import BigFixed, sqrt

        extra = 16
        for part in (self.a, self.b):
            if part:
                extra = max(extra, part.numerator.bit_length() - part.denominator.bit_length() + 16)
        work = prec + extra
        root = sqrt(BigFixed.from_int(self.d, work), work)
        value = BigFixed.from_fraction(self.a, work) + root * BigFixed.from_fraction(self.b, work)
        return BigFixed(value.mantissa, value.frac_bits, prec)

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.d})"


def quad_mul(x: QuadSurd, y: QuadSurd) -> QuadSurd:
    """Product of two surds over the same radicand, reduced."""
    return x * y


@dataclass(frozen=True)
class GaussianInt:
    """Complex integer re + im*i with exact arithmetic."""

    re: int
    im: int

    def __add__(self, other):
        if isinstance(other, GaussianInt):
            return GaussianInt(self.re + other.re, self.im + other.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianInt):
            return GaussianInt(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, int):
            return GaussianInt(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = GaussianInt(1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __str__(self):
        return f"{self.re}{self.im:+d}i"


def gaussian_powprod(factors) -> tuple[GaussianInt, GaussianInt]:
    """Exact product of (g, exponent) factors as a Gaussian-integer fraction.

    Negative exponents contribute to the denominator.  The result is not
    reduced; callers that need the reduced value divide exactly.
    """
    num = GaussianInt(1, 0)
    den = GaussianInt(1, 0)
    for g, e in factors:
        if not isinstance(e, int) or e == 0:
            raise ValueError(f"exponent must be a nonzero integer, got {e!r}")
        if e > 0:
            num = num * g**e
        else:
            den = den * g ** (-e)
    return num, den


def gaussian_div_exact(num: GaussianInt, den: GaussianInt) -> GaussianInt:
    """num / den when den divides num exactly, else ValueError."""
    n = den.norm()
    if n == 0:
        raise ZeroDivisionError("division by Gaussian zero")
    z = num * den.conjugate()
    if z.re % n or z.im % n:
        raise ValueError(f"{num} is not divisible by {den}")
    return GaussianInt(z.re // n, z.im // n)
