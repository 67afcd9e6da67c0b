"""Certified reference digits of pi and the digit-file format.

A reference is accepted only when two unrelated algorithms, the fast
series evaluator and the AGM iteration, produce digit-for-digit identical
output over the full requested length. The package bundles a 100,000-digit
decimal reference and a 100,016-digit hexadecimal one, both generated by
its own bootstrap command; every other algorithm is judged against them.

Digit files are plain text: '#' header lines carrying base, length,
provenance, checksum and the generating command, then the digits in
80-column rows (the integer part and point on a row of their own).
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .bigfixed import BigFixed, decimal_digits_to_bits, to_digits

__all__ = [
    "ReferenceDigits",
    "CertificationError",
    "bootstrap_reference",
    "write_reference_file",
    "read_reference_file",
    "load_reference",
    "pi_digits",
    "pi_bigfixed",
    "pi_power",
    "correct_digits",
    "DATA_FILES",
]

DATA_FILES = {10: "pi_dec_100000.txt", 16: "pi_hex_100016.txt"}

_PROVENANCE = "bootstrap-chudnovsky,bootstrap-agm"


class CertificationError(RuntimeError):
    """The two bootstrap algorithms disagreed; no reference was produced."""


@dataclass(frozen=True)
class ReferenceDigits:
    base: int
    digits: str  # fractional digits only; the integer part of pi is 3
    provenance: str
    checksum: str

    def __len__(self):
        return len(self.digits)


def _checksum(digits: str) -> str:
    return "sha256:" + hashlib.sha256(digits.encode("ascii")).hexdigest()


def bootstrap_reference(digits: int, base: int = 10, workers: int = 1) -> ReferenceDigits:
    """Compute `digits` fractional digits of pi twice and cross-certify them."""
    from .hyperseries import SPEC_CATALOG, sum_to_digits
    from .iterative import agm_pi, iterations_for_digits

    if base not in (10, 16):
        raise ValueError("reference base must be 10 or 16")
    if digits < 1:
        raise ValueError("digits must be >= 1")
    # Both runs target a dozen spare digits so truncation at `digits` is stable.
    dec_equiv = digits if base == 10 else math.ceil(digits * math.log10(16)) + 1
    dec_equiv += 12
    series_value = sum_to_digits(SPEC_CATALOG["chudnovsky"], dec_equiv, workers=workers)
    prec = decimal_digits_to_bits(dec_equiv) + 16
    agm_value = agm_pi(iterations_for_digits("agm", dec_equiv), prec)
    series_digits = to_digits(series_value, base, digits)
    agm_digits = to_digits(agm_value, base, digits)
    if series_digits != agm_digits:
        first = next(i for i, (x, y) in enumerate(zip(series_digits, agm_digits)) if x != y)
        raise CertificationError(
            f"bootstrap algorithms disagree at fractional digit {first + 1} (base {base})"
        )
    return ReferenceDigits(base, series_digits, _PROVENANCE, _checksum(series_digits))


def write_reference_file(path, ref: ReferenceDigits, command: str) -> None:
    rows = [ref.digits[i : i + 80] for i in range(0, len(ref.digits), 80)]
    with open(path, "w") as fh:
        fh.write("# pi reference digits\n")
        fh.write(f"# base: {ref.base}\n")
        fh.write(f"# digits: {len(ref.digits)}\n")
        fh.write(f"# provenance: {ref.provenance}\n")
        fh.write(f"# checksum: {ref.checksum}\n")
        fh.write(f"# command: {command}\n")
        fh.write("3.\n")
        fh.write("\n".join(rows))
        fh.write("\n")


def _parse_reference(text: str) -> ReferenceDigits:
    header = {}
    digits_rows = []
    for line in text.splitlines():
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, _, value = body.partition(":")
                header[key.strip()] = value.strip()
        elif line.strip() and line.strip() != "3.":
            digits_rows.append(line.strip())
    digits = "".join(digits_rows)
    base = int(header.get("base", "10"))
    claimed = int(header.get("digits", "0"))
    if claimed != len(digits):
        raise CertificationError(f"digit count mismatch: header {claimed}, body {len(digits)}")
    checksum = header.get("checksum", "")
    if checksum != _checksum(digits):
        raise CertificationError("reference checksum mismatch")
    return ReferenceDigits(base, digits, header.get("provenance", "unknown"), checksum)


def read_reference_file(path) -> ReferenceDigits:
    with open(path) as fh:
        return _parse_reference(fh.read())


@lru_cache(maxsize=None)
def load_reference(base: int = 10) -> ReferenceDigits:
    """The packaged, dual-certified reference for the given base."""
    if base not in DATA_FILES:
        raise ValueError(f"no packaged reference for base {base}")
    text = resources.files("piforge.data").joinpath(DATA_FILES[base]).read_text()
    return _parse_reference(text)


def pi_digits(count: int, base: int = 10) -> str:
    """First `count` fractional reference digits, or ValueError if too long."""
    ref = load_reference(base)
    if count > len(ref.digits):
        raise ValueError(f"packaged base-{base} reference holds {len(ref.digits)} digits, asked {count}")
    return ref.digits[:count]


def pi_bigfixed(prec: int) -> BigFixed:
    """Reference pi as a BigFixed certified to `prec` bits."""
    need = math.ceil(prec / 3.321) + 4
    digits = pi_digits(need)
    f = prec + 64
    m = ((3 * 10**need + int(digits)) << f) // 10**need
    return BigFixed(m, f, prec)


def pi_power(s: int, prec: int) -> BigFixed:
    """pi**s from the reference, for s in 1..4."""
    if not 1 <= s <= 4:
        raise ValueError("supported powers are 1..4")
    value = pi_bigfixed(prec + 8)
    out = value
    for _ in range(s - 1):
        out = out * value
    return BigFixed(out.mantissa, out.frac_bits, prec)


def correct_digits(value: BigFixed, base: int = 10, limit: int | None = None) -> int:
    """Length of the common fractional-digit prefix between value and reference pi.

    Returns 0 when even the integer part is wrong.
    """
    ref = load_reference(base)
    cap = (value.prec - 8) / math.log2(base)
    count = min(len(ref.digits), int(cap))
    if limit is not None:
        count = min(count, limit)
    if value.floor() != 3:
        return 0
    mine = to_digits(value, base, count)
    n = 0
    for a, b in zip(mine, ref.digits):
        if a != b:
            break
        n += 1
    return n
