"""Fixed-point arbitrary-precision reals.

A BigFixed stores an integer mantissa m and a fractional bit count f and
represents m / 2**f. Every value also carries the precision ``prec`` (bits)
its producer certifies: the stored number differs from the exact result of
the operation sequence by at most about 2**-prec. Working width always
includes GUARD_BITS extra fractional bits, so the floor rounding done by
each individual operation stays far below the certified precision, and
cancellation-prone subtractions are harmless because the representation is
absolute, not normalized.

Design notes, fixed once for the whole package:

* fixed point, no exponent: everything here lives near small constants,
  which keeps error accounting and digit extraction simple;
* floor (truncation) everywhere, never round-to-nearest, so digit strings
  are prefixes of longer runs and reruns are bit-identical;
* square roots use an integer Newton iteration whose working precision
  doubles per level, seeded from a hardware float estimate; m-th roots use
  the same scheme with an exact floor fix-up;
* division is exact integer floor division of the scaled mantissas;
* no global state of any kind.
"""

from __future__ import annotations

import math
import sys
from fractions import Fraction

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)  # reference digit strings run to 100k+ places

GUARD_BITS = 64
LOG2_10 = 3.3219280948873623

__all__ = [
    "GUARD_BITS",
    "BigFixed",
    "PrecisionError",
    "sqrt",
    "nth_root",
    "to_digits",
    "render",
    "decimal_digits_to_bits",
]


class PrecisionError(ValueError):
    """An operation would claim more digits than its inputs certify."""


def decimal_digits_to_bits(digits: int) -> int:
    """Bits of fractional precision needed to certify `digits` decimal places."""
    return int(digits * LOG2_10) + 16


def _shift(m: int, k: int) -> int:
    """m * 2**k with floor semantics for negative k."""
    return m << k if k >= 0 else m >> (-k)


def _isqrt(n: int) -> int:
    """Floor square root by Newton iteration with doubling working precision.

    Adaptive-precision scheme: the candidate root is developed a block of
    bits at a time, each level one Newton step at roughly twice the width of
    the previous one, so total cost is dominated by the final full-width
    division.
    """
    if n < 0:
        raise ValueError("square root of a negative number")
    if n == 0:
        return 0
    c = (n.bit_length() - 1) // 2
    a = 1
    d = 0
    for s in reversed(range(c.bit_length())):
        e = d
        d = c >> s
        a = (a << d - e - 1) + (n >> 2 * c - e - d + 1) // a
    return a - 1 if a * a > n else a


def _iroot(n: int, k: int) -> int:
    """Floor k-th root of n >= 0 for k >= 1."""
    if n < 0:
        raise ValueError("negative radicand")
    if k == 1 or n == 0:
        return n
    if k == 2:
        return _isqrt(n)
    b = n.bit_length()
    if b <= 62:
        x = int(n ** (1.0 / k)) + 1
    else:
        # Float seed on the top bits; keep the dropped exponent divisible by k.
        shift = b - 62
        shift += (-shift) % k
        x = int(((n >> shift) * (1.0 + 1e-9)) ** (1.0 / k)) + 2
        x <<= shift // k
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


class BigFixed:
    """Immutable fixed-point real: mantissa / 2**frac_bits."""

    __slots__ = ("_m", "_f", "_p")

    def __init__(self, mantissa: int, frac_bits: int, prec: int | None = None):
        if frac_bits < 0:
            raise ValueError("frac_bits must be nonnegative")
        self._m = mantissa
        self._f = frac_bits
        self._p = max(1, frac_bits - GUARD_BITS) if prec is None else prec

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_int(cls, n: int, prec: int) -> "BigFixed":
        f = prec + GUARD_BITS
        return cls(n << f, f, prec)

    @classmethod
    def from_ratio(cls, num: int, den: int, prec: int) -> "BigFixed":
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        f = prec + GUARD_BITS
        return cls((num << f) // den, f, prec)

    @classmethod
    def from_fraction(cls, fr: Fraction, prec: int) -> "BigFixed":
        return cls.from_ratio(fr.numerator, fr.denominator, prec)

    @classmethod
    def from_decimal(cls, text: str, prec: int) -> "BigFixed":
        """Parse a plain decimal string such as '3.14159' or '-0.5'."""
        s = text.strip()
        sign = 1
        if s.startswith(("+", "-")):
            if s[0] == "-":
                sign = -1
            s = s[1:]
        if "." in s:
            ipart, fpart = s.split(".", 1)
        else:
            ipart, fpart = s, ""
        if not (ipart + fpart).isdigit() or not (ipart or fpart):
            raise ValueError(f"not a decimal literal: {text!r}")
        num = int(ipart + fpart) if (ipart + fpart) else 0
        return cls.from_ratio(sign * num, 10 ** len(fpart), prec)

    # -- structure ---------------------------------------------------------

    @property
    def mantissa(self) -> int:
        return self._m

    @property
    def frac_bits(self) -> int:
        return self._f

    @property
    def prec(self) -> int:
        return self._p

    def sign(self) -> int:
        return (self._m > 0) - (self._m < 0)

    def bit_magnitude(self) -> int | None:
        """floor(log2 |x|) + 1, or None for zero."""
        if self._m == 0:
            return None
        return abs(self._m).bit_length() - self._f

    def to_fraction(self) -> Fraction:
        return Fraction(self._m, 1 << self._f)

    def to_float(self) -> float:
        bm = self.bit_magnitude()
        if bm is None:
            return 0.0
        drop = max(0, self._f - 96)
        return math.ldexp(self._m >> drop, drop - self._f)

    # -- arithmetic ---------------------------------------------------------

    def _align(self, other: "BigFixed") -> tuple[int, int, int]:
        f = max(self._f, other._f)
        return _shift(self._m, f - self._f), _shift(other._m, f - other._f), f

    def _coerce(self, other):
        if isinstance(other, BigFixed):
            return other
        if isinstance(other, int):
            return BigFixed(other << self._f, self._f, self._p)
        if isinstance(other, Fraction):
            return BigFixed.from_fraction(other, self._p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ma, mb, f = self._align(o)
        return BigFixed(ma + mb, f, min(self._p, o._p))

    __radd__ = __add__

    def __neg__(self):
        return BigFixed(-self._m, self._f, self._p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ma, mb, f = self._align(o)
        return BigFixed(ma - mb, f, min(self._p, o._p))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__sub__(self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = max(self._f, o._f)
        return BigFixed((self._m * o._m) >> min(self._f, o._f), f, min(self._p, o._p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o._m == 0:
            raise ZeroDivisionError("division by zero")
        f = max(self._f, o._f)
        num = _shift(self._m, f + o._f - self._f)
        if o._m < 0:
            num, dm = -num, -o._m
        else:
            dm = o._m
        return BigFixed(num // dm, f, min(self._p, o._p))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = BigFixed(1 << self._f, self._f, self._p)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_pow2(self, k: int) -> "BigFixed":
        """Exact multiplication by 2**k."""
        nf = self._f - k
        if nf >= 0:
            return BigFixed(self._m, nf, self._p)
        return BigFixed(self._m << (-nf), 0, self._p)

    def __abs__(self):
        return BigFixed(abs(self._m), self._f, self._p)

    def floor(self) -> int:
        return self._m >> self._f

    # -- comparisons ---------------------------------------------------------

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare BigFixed with {type(other).__name__}")
        ma, mb, _ = self._align(o)
        return (ma > mb) - (ma < mb)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, (BigFixed, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self):
        return hash(self.to_fraction())

    def __repr__(self):
        shown = min(24, max(1, int((self._p - 8) / LOG2_10))) if self._p > 16 else 6
        try:
            return f"BigFixed({render(self, 10, shown)}, prec={self._p})"
        except PrecisionError:
            return f"BigFixed(m={self._m}, f={self._f}, prec={self._p})"


def sqrt(x: BigFixed, prec: int) -> BigFixed:
    """Square root with |result - sqrt(x)| <= 2**-prec * sqrt(x).

    Exact on representable perfect squares: the scaled mantissa goes through
    a floor integer square root, so no rounding occurs when none is needed.
    """
    if x.sign() < 0:
        raise ValueError("square root of a negative value")
    f_out = prec + GUARD_BITS
    bm = x.bit_magnitude()
    if bm is None:
        return BigFixed(0, f_out, prec)
    if bm < 0:
        # Tiny inputs need extra absolute bits to honor the relative contract.
        f_out += (-bm) // 2 + 1
    r = _isqrt(_shift(x.mantissa, 2 * f_out - x.frac_bits))
    return BigFixed(r, f_out, prec)


def nth_root(x: BigFixed, m: int, prec: int) -> BigFixed:
    """m-th root with |result**m - x| <= m * 2**-prec * x."""
    if m < 2:
        raise ValueError("root order must be >= 2")
    neg = x.sign() < 0
    if neg and m % 2 == 0:
        raise ValueError("even root of a negative value")
    y = abs(x)
    f_out = prec + GUARD_BITS
    bm = y.bit_magnitude()
    if bm is None:
        return BigFixed(0, f_out, prec)
    if bm < 0:
        f_out += (-bm) // m + 1
    r = _iroot(_shift(y.mantissa, m * f_out - y.frac_bits), m)
    return BigFixed(-r if neg else r, f_out, prec)


_DIGIT_BITS = {2: 1, 4: 2, 10: None, 16: 4}
_HEX = "0123456789ABCDEF"


def to_digits(x: BigFixed, base: int, count: int) -> str:
    """First `count` fractional digits of |x| in `base`, by exact truncation.

    Deterministic and prefix-stable: the n-digit string is always a prefix
    of the (n+1)-digit string. Refuses rather than emitting digits beyond
    the certified precision.
    """
    if base not in _DIGIT_BITS:
        raise ValueError(f"unsupported base {base}")
    if count < 0:
        raise ValueError("digit count must be nonnegative")
    need = count * math.log2(base)
    if need > x.prec - 8:
        raise PrecisionError(
            f"{count} base-{base} digits need {math.ceil(need) + 8} certified bits, "
            f"value has {x.prec}"
        )
    if count == 0:
        return ""
    m = abs(x.mantissa)
    f = x.frac_bits
    frac = m & ((1 << f) - 1)
    val = (frac * base**count) >> f
    if base == 10:
        return str(val).zfill(count)
    if base == 16:
        return format(val, "X").zfill(count)
    if base == 2:
        return format(val, "b").zfill(count)
    bits = format(val, "b").zfill(2 * count)
    return "".join(str(int(bits[i : i + 2], 2)) for i in range(0, 2 * count, 2))


def render(x: BigFixed, base: int, frac_digits: int) -> str:
    """Human-readable form: sign, integer part, point, fractional digits."""
    ip = abs(x.mantissa) >> x.frac_bits
    if base == 10:
        head = str(ip)
    else:
        head = format(ip, "X") if base == 16 else _int_to_base(ip, base)
    sign = "-" if x.sign() < 0 else ""
    if frac_digits == 0:
        return sign + head
    return sign + head + "." + to_digits(x, base, frac_digits)


def _int_to_base(n: int, base: int) -> str:
    if n == 0:
        return "0"
    out = []
    while n:
        n, r = divmod(n, base)
        out.append(_HEX[r])
    return "".join(reversed(out))
