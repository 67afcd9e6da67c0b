"""Integer relation detection: standard PSLQ on fixed-point values.

Given reals x_1..x_n at a common precision, PSLQ searches for a nonzero
integer vector a with sum(a_i * x_i) = 0 to the working accuracy. The
implementation follows the standard formulation: a lower-trapezoidal
matrix built from partial norms, Hermite reduction mirrored in exact
integer matrices A and B, weighted diagonal selection with parameter
gamma, adjacent-row swaps and a corner rotation. All matrix entries are
fixed-point integers at the precision of the inputs; A and B stay exact.

A returned relation is never trusted from the iteration alone: the exact
dot product against the original inputs must sit below the residual
threshold, and the result is normalized (gcd one, first nonzero entry
positive) so runs are comparable. A `none` outcome carries a reason code;
it means the search stopped, not that no relation exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bigfixed import BigFixed, _isqrt, _shift

__all__ = ["RelationProblem", "PslqResult", "pslq"]


@dataclass(frozen=True)
class RelationProblem:
    xs: tuple  # BigFixed values at a common precision
    max_coeff_bits: int = 64
    gamma: float = math.sqrt(4.0 / 3.0)
    epsilon_bits: int | None = None  # residual threshold 2**-epsilon_bits; default prec//2

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(self.xs))
        if len(self.xs) < 2:
            raise ValueError("need at least two inputs")
        if not 1.0 < self.gamma < 4.0:
            raise ValueError("gamma out of range")


@dataclass(frozen=True)
class PslqResult:
    coefficients: tuple | None
    reason: str | None  # iterations_exhausted | precision_floor_hit when no relation
    diagnostic: str
    iterations: int


def _to_float(scaled: int, f: int) -> float:
    if scaled == 0:
        return 0.0
    b = abs(scaled).bit_length()
    drop = max(0, b - 53)
    return math.ldexp(scaled >> drop if scaled > 0 else -((-scaled) >> drop), drop - f)


def _nint_div(a: int, b: int) -> int:
    """Nearest integer to a / b, ties toward +infinity; b may be negative."""
    if b < 0:
        a, b = -a, -b
    return (2 * a + b) // (2 * b)


def _normalize(coeffs: list[int]) -> tuple:
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    if g > 1:
        coeffs = [c // g for c in coeffs]
    for c in coeffs:
        if c:
            if c < 0:
                coeffs = [-x for x in coeffs]
            break
    return tuple(coeffs)


def pslq(problem: RelationProblem) -> PslqResult:
    """Run PSLQ; returns a normalized relation or none with a reason code."""
    xs = problem.xs
    n = len(xs)
    f = max(x.frac_bits for x in xs)
    prec = min(x.prec for x in xs)
    eps_bits = problem.epsilon_bits if problem.epsilon_bits is not None else prec // 2
    floor_bits = prec - 24  # below this, y entries are input noise

    raw = [_shift(x.mantissa, f - x.frac_bits) for x in xs]
    if all(m == 0 for m in raw):
        return PslqResult(None, "precision_floor_hit", "all inputs are zero", 0)
    norm = _isqrt(sum(m * m for m in raw))

    def verified(cand: list[int]) -> bool:
        dot = sum(c * m for c, m in zip(cand, raw))
        return abs(dot) <= (norm >> eps_bits) and any(cand)

    one = 1 << f
    y = [(m << f) // norm for m in raw]
    s = [0] * n
    acc = 0
    for k in range(n - 1, -1, -1):
        acc += y[k] * y[k]
        s[k] = _isqrt(acc)
    h = [[0] * (n - 1) for _ in range(n)]
    for i in range(n):
        if i < n - 1:
            h[i][i] = (s[i + 1] << f) // s[i]
        for j in range(i):
            h[i][j] = -(y[i] * y[j]) // ((s[j] * s[j + 1]) >> f)
    a = [[int(i == j) for j in range(n)] for i in range(n)]
    b = [[int(i == j) for j in range(n)] for i in range(n)]

    def reduce_all():
        for i in range(1, n):
            for j in range(min(i, n - 1) - 1, -1, -1):
                if h[j][j] == 0:
                    continue
                t = _nint_div(h[i][j], h[j][j])
                if t == 0:
                    continue
                y[j] += t * y[i]
                for k in range(j + 1):
                    h[i][k] -= t * h[j][k]
                for k in range(n):
                    a[i][k] -= t * a[j][k]
                    b[k][j] += t * b[k][i]

    reduce_all()
    max_iter = 300 * n * n
    gamma = problem.gamma
    for iteration in range(1, max_iter + 1):
        # Weighted selection of the swap row.
        best, best_w = 0, -1.0
        w = 1.0
        for i in range(n - 1):
            w *= gamma
            cand = w * abs(_to_float(h[i][i], f))
            if cand > best_w:
                best, best_w = i, cand
        r = best
        y[r], y[r + 1] = y[r + 1], y[r]
        h[r], h[r + 1] = h[r + 1], h[r]
        a[r], a[r + 1] = a[r + 1], a[r]
        for row in b:
            row[r], row[r + 1] = row[r + 1], row[r]
        if r < n - 2:
            h_rr, h_rs = h[r][r], h[r][r + 1]
            t0 = _isqrt(h_rr * h_rr + h_rs * h_rs)
            if t0:
                c = (h_rr << f) // t0
                sr = (h_rs << f) // t0
                for i in range(r, n):
                    u, v = h[i][r], h[i][r + 1]
                    h[i][r] = (u * c + v * sr) >> f
                    h[i][r + 1] = (v * c - u * sr) >> f
        reduce_all()

        # Relation detection on the updated y vector.
        for j in range(n):
            if abs(y[j]) < (one >> eps_bits):
                cand = [b[i][j] for i in range(n)]
                if verified(cand):
                    coeffs = _normalize(cand)
                    big = max(abs(c) for c in coeffs)
                    if big.bit_length() > problem.max_coeff_bits:
                        return PslqResult(
                            None, "iterations_exhausted",
                            f"relation found but coefficients need {big.bit_length()} bits "
                            f"(bound {problem.max_coeff_bits})", iteration,
                        )
                    return PslqResult(coeffs, None, "relation verified by exact dot product", iteration)

        # Norm bound: no relation shorter than 1/max|H_ii| exists, so once
        # that bound clears the coefficient budget there is nothing to find.
        diag_max = max(abs(h[i][i]) for i in range(n - 1))
        if diag_max == 0 or (one << problem.max_coeff_bits) < (one << f) // diag_max:
            return PslqResult(
                None, "iterations_exhausted",
                f"relation norm bound exceeds 2**{problem.max_coeff_bits}", iteration,
            )
        if min(abs(v) for v in y) < (one >> floor_bits):
            return PslqResult(
                None, "precision_floor_hit",
                "an entry reached the input noise floor without a verifiable relation",
                iteration,
            )
    return PslqResult(None, "iterations_exhausted", f"no relation after {max_iter} iterations", max_iter)
