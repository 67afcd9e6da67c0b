"""Command-line surface.

Subcommands: compute (digit files), digit (isolated digit extraction),
verify (exact and numeric identity suites), bench (convergence reports
with figure and CSV), discover (PSLQ relation search), reference
(dual-certified digit files), catalog (structured listing).

Exit codes are part of the contract: 0 success, 1 nothing found,
2 verification mismatch, 3 precision refusal.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import reference
from .bigfixed import BigFixed, PrecisionError, decimal_digits_to_bits, render, to_digits
from .classical import (
    CATALOG,
    MACHIN_FORMULAS,
    catalog_eval,
    catalog_listing,
    euler_sum_linear,
    euler_sum_squared,
    machin_eval,
    machin_validate,
    zeta_even,
)
from .hyperseries import SPEC_CATALOG, catalog_report, sum_to_digits
from .iterative import agm_pi, archimedes_run, iterations_for_digits, quartic_pi
from .relfind import PslqResult, RelationProblem, pslq
from .spigot import FORMULAS, extract_bits, extract_digits, validate_full
from .wzcheck import MUTATED_GUI1, WZ_PAIRS, verify_pair

EXIT_OK = 0
EXIT_NOT_FOUND = 1
EXIT_MISMATCH = 2
EXIT_PRECISION = 3

_BIT_ACC = 192  # accumulator width used by spigot.extract_bits


def _workers(args) -> int:
    if getattr(args, "workers", None):
        return max(1, args.workers)
    env = os.environ.get("PI_FORGE_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


# ---------------------------------------------------------------- compute


def _compute_pi(algorithm: str, digits: int, workers: int) -> BigFixed:
    prec = decimal_digits_to_bits(digits) + 16
    if algorithm == "archimedes":
        steps = iterations_for_digits("archimedes", digits)
        prec = max(prec, 2 * steps + 32)
        lo, hi = archimedes_run(steps, prec)
        return (lo + hi).mul_pow2(-1)
    if algorithm == "agm":
        return agm_pi(iterations_for_digits("agm", digits), prec)
    if algorithm in ("quartic-a", "quartic-b"):
        return quartic_pi(iterations_for_digits("quartic", digits), prec, algorithm[-1].upper())
    if algorithm in MACHIN_FORMULAS:
        return machin_eval(MACHIN_FORMULAS[algorithm], digits)
    if algorithm in SPEC_CATALOG and SPEC_CATALOG[algorithm].target_power == 1:
        return sum_to_digits(SPEC_CATALOG[algorithm], digits, workers=workers)
    if algorithm in CATALOG:
        entry = CATALOG[algorithm]
        coef, power, d = entry.target
        if entry.digits_per_term is None or d != 1 or power not in (1, -1):
            raise ValueError(f"{algorithm} cannot produce pi digits directly")
        n_terms = math.ceil(digits / entry.digits_per_term) + 16
        result = catalog_eval(algorithm, n_terms, prec)
        if power == 1:
            return result.value / BigFixed.from_fraction(coef, prec)
        return BigFixed.from_fraction(coef, prec) / result.value
    raise KeyError(f"unknown compute algorithm {algorithm!r}")


def compute_registry() -> list[str]:
    names = ["archimedes", "agm", "quartic-a", "quartic-b"]
    names += list(MACHIN_FORMULAS)
    names += [s.id for s in SPEC_CATALOG.values() if s.target_power == 1]
    names += [
        e.id
        for e in CATALOG.values()
        if e.digits_per_term is not None and e.target[2] == 1 and e.target[1] in (1, -1)
    ]
    return names


def cmd_compute(args) -> int:
    if args.digits < 1:
        print("digits must be >= 1", file=sys.stderr)
        return EXIT_PRECISION
    workers = _workers(args)
    base = 16 if args.hex else 10
    count = math.ceil(args.digits * math.log(10) / math.log(base)) if base != 10 else args.digits
    try:
        value = _compute_pi(args.algorithm, args.digits + (8 if base == 16 else 0), workers)
        digits = to_digits(value, base, count)
    except PrecisionError as exc:
        print(f"precision refusal: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        print("known algorithms: " + ", ".join(compute_registry()), file=sys.stderr)
        return EXIT_NOT_FOUND

    ref = reference.load_reference(base)
    verified = "unverified (reference shorter than output)"
    if count <= len(ref.digits):
        expect = ref.digits[:count]
        if digits != expect:
            first = next(i for i, (x, y) in enumerate(zip(digits, expect)) if x != y)
            print(
                f"verification mismatch: first divergent fractional digit index {first + 1}",
                file=sys.stderr,
            )
            return EXIT_MISMATCH
        verified = "verified against packaged reference"

    out = args.out or f"pi_{args.algorithm}_{args.digits}.txt"
    record = reference.ReferenceDigits(base, digits, f"algorithm:{args.algorithm}", reference._checksum(digits))
    reference.write_reference_file(out, record, command=" ".join(sys.argv))
    print(f"wrote {count} base-{base} digits to {out} ({verified})")
    return EXIT_OK


# ---------------------------------------------------------------- digit


def _cache_lookup(path, key):
    if not path or not os.path.exists(path):
        return None
    with open(path) as fh:
        for line in fh:
            row = json.loads(line)
            if row["key"] == key:
                return row["digits"]
    return None


def _cache_store(path, key, digits):
    if not path:
        return
    with open(path, "a") as fh:
        fh.write(json.dumps({"key": key, "digits": digits}) + "\n")


def cmd_digit(args) -> int:
    formula = FORMULAS.get(args.formula)
    if formula is None:
        print(f"unknown formula {args.formula!r}; known: {', '.join(FORMULAS)}", file=sys.stderr)
        return EXIT_NOT_FOUND
    workers = _workers(args)
    mode = "bits" if args.bits is not None else "digits"
    count = args.bits if args.bits is not None else args.count
    if count == 0:
        print("", end="")
        return EXIT_OK
    key = [args.formula, args.position, mode, count]
    cached = _cache_lookup(args.cache, key)
    if cached is not None:
        print(cached)
        return EXIT_OK
    try:
        if mode == "bits":
            if count > 60:
                raise PrecisionError("bit count exceeds the 60-bit guard budget")
            acc = extract_bits(formula, args.position, workers)
            out = "".join(str((acc >> (_BIT_ACC - i)) & 1) for i in range(1, count + 1))
        else:
            out = extract_digits(formula, args.position, count, workers)
    except PrecisionError as exc:
        print(f"precision refusal: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NOT_FOUND
    _cache_store(args.cache, key, out)
    print(out)
    return EXIT_OK


# ---------------------------------------------------------------- verify


def _verify_machin(digits: int) -> list[str]:
    failures = []
    lines = []
    for formula in MACHIN_FORMULAS.values():
        result = machin_validate(formula)
        lines.append(f"machin {formula.id}: exact validation {'pass' if result.passed else 'FAIL'}")
        if not result.passed:
            failures.append(result.detail)
    for fid in ("machin", "gauss"):
        value = machin_eval(MACHIN_FORMULAS[fid], digits)
        good = reference.correct_digits(value)
        lines.append(f"machin {fid}: {good} digits vs reference (requested {digits})")
        if good < digits:
            failures.append(f"{fid} reached only {good} of {digits} digits")
    lines.extend(failures)
    if failures:
        raise VerifyFailure(lines, failures[0])
    return lines


def _verify_wz(grid: int) -> list[str]:
    lines = []
    for pair in WZ_PAIRS.values():
        report = verify_pair(pair, grid, grid)
        lines.append(
            f"wz {pair.id}: grid {grid}x{grid} {'pass' if report.passed else 'FAIL'} "
            f"({report.elapsed:.2f}s, max denominator {report.max_denominator_bits} bits)"
        )
        if not report.passed:
            raise VerifyFailure(lines, f"{pair.id} failed at {report.counterexample[:2]}")
    control = verify_pair(MUTATED_GUI1, 3, 3)
    lines.append(
        f"wz negative control: {'caught' if not control.passed else 'MISSED'} "
        f"(witness {control.counterexample[:2] if control.counterexample else None})"
    )
    if control.passed:
        raise VerifyFailure(lines, "mutated pair slipped through the verifier")
    return lines


def _match_digits(value, target, count) -> int:
    if value.floor() != target.floor():
        return 0
    a = to_digits(value, 10, count)
    b = to_digits(target, 10, count)
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def _verify_catalog(digits: int) -> list[str]:
    lines = []
    failures = []
    prec = decimal_digits_to_bits(digits) + 16
    for entry in CATALOG.values():
        if entry.digits_per_term is not None:
            n_terms = math.ceil(digits / entry.digits_per_term) + 16
            result = catalog_eval(entry.id, n_terms, prec)
            good = _match_digits(result.value, result.target, digits)
            ok = good >= digits - 5
            lines.append(f"catalog {entry.id}: {good}/{digits} digits {'pass' if ok else 'FAIL'}")
            if not ok:
                failures.append(f"{entry.id}: {good} digits")
        else:
            result = catalog_eval(entry.id, entry.suite_terms, decimal_digits_to_bits(60))
            err = result.abs_error.to_float()
            ok = err <= entry.suite_bound
            lines.append(
                f"catalog {entry.id}: depth {entry.suite_terms}, |error| {err:.2e} "
                f"within {entry.suite_bound:.0e} {'pass' if ok else 'FAIL'}"
            )
            if not ok:
                failures.append(f"{entry.id}: error {err:.2e} above bound")
    # forty-digit accelerated spot values
    prec40 = 256
    for name, value, target in [
        ("zeta2", zeta_even(2, prec40), reference.pi_power(2, prec40) * BigFixed.from_ratio(1, 6, prec40)),
        ("zeta4", zeta_even(4, prec40), reference.pi_power(4, prec40) * BigFixed.from_ratio(1, 90, prec40)),
        ("euler_sum_linear", euler_sum_linear(prec40), reference.pi_power(4, prec40) * BigFixed.from_ratio(1, 72, prec40)),
        ("euler_sum_squared", euler_sum_squared(prec40), reference.pi_power(4, prec40) * BigFixed.from_ratio(17, 360, prec40)),
    ]:
        good = _match_digits(value, target, 40)
        ok = good >= 40
        lines.append(f"accelerated {name}: {good}/40 digits {'pass' if ok else 'FAIL'}")
        if not ok:
            failures.append(f"{name}: {good}/40")
    for fid, formula in FORMULAS.items():
        value, target, err = validate_full(formula, 256)
        bm = err.bit_magnitude()
        ok = bm is not None and bm <= -200 or bm is None
        lines.append(f"bbp {fid}: full-precision error 2^{bm if bm is not None else '-inf'} {'pass' if ok else 'FAIL'}")
        if not ok:
            failures.append(f"{fid}: error too large")
    if failures:
        raise VerifyFailure(lines, failures[0])
    return lines


def _verify_series(digits: int, workers: int) -> list[str]:
    lines = []
    failures = []
    prec = decimal_digits_to_bits(digits) + 16
    for spec in SPEC_CATALOG.values():
        value = sum_to_digits(spec, digits, workers=workers)
        target = reference.pi_power(spec.target_power, prec)
        good = _match_digits(value, target, digits)
        ok = good >= digits - 5
        lines.append(f"series {spec.id}: {good}/{digits} digits of pi^{spec.target_power} {'pass' if ok else 'FAIL'}")
        if not ok:
            failures.append(f"{spec.id}: {good} digits")
    if failures:
        raise VerifyFailure(lines, failures[0])
    return lines


class VerifyFailure(Exception):
    def __init__(self, lines, detail):
        super().__init__(detail)
        self.lines = lines
        self.detail = detail


def cmd_verify(args) -> int:
    suites = ("machin", "wz", "catalog", "series") if args.suite == "all" else (args.suite,)
    workers = _workers(args)
    code = EXIT_OK
    for suite in suites:
        try:
            if suite == "machin":
                lines = _verify_machin(args.digits or 100)
            elif suite == "wz":
                lines = _verify_wz(args.grid)
            elif suite == "catalog":
                lines = _verify_catalog(args.digits or 200)
            elif suite == "series":
                lines = _verify_series(args.digits or 200, workers)
            else:
                print(f"unknown suite {suite!r}", file=sys.stderr)
                return EXIT_NOT_FOUND
            for line in lines:
                print(line)
        except VerifyFailure as fail:
            for line in fail.lines:
                print(line)
            print(f"FAIL: {fail.detail}", file=sys.stderr)
            code = EXIT_MISMATCH
    return code


# ---------------------------------------------------------------- bench


def cmd_bench(args) -> int:
    from .bench import bench_algorithms, write_report

    algorithms = [a for a in (args.algorithms or "").split(",") if a]
    report = bench_algorithms(algorithms, args.digits, _workers(args))
    json_path = args.json_out or "bench_report.json"
    stem = json_path[:-5] if json_path.endswith(".json") else json_path
    csv_path = stem + ".csv"
    fig_path = stem + ".png"
    write_report(report, json_path, csv_path, fig_path if not args.no_figure else None)
    for result in report["results"]:
        status = result["error"] or f"{result['achieved_digits']} digits in {result['steps']} steps"
        print(f"bench {result['algorithm']}: {status}")
    print(f"report: {json_path}, {csv_path}" + ("" if args.no_figure else f", {fig_path}"))
    return EXIT_OK


# ---------------------------------------------------------------- discover


def _bbp_inputs(base: int, period: int, precision_digits: int):
    if base != 16:
        raise ValueError("automatic construction supports base 16")
    prec = decimal_digits_to_bits(precision_digits)
    f = prec + 96
    xs = [reference.pi_bigfixed(prec)]
    for j in range(1, period):
        total = 0
        n = 0
        while True:
            shift = f - 4 * n
            if shift < 0:
                break
            total += (1 << shift) // (8 * n + j)
            n += 1
        xs.append(BigFixed(total, f, prec))
    return xs


_CANONICAL_BBP = (1, -4, 0, 0, 2, 1, 1, 0)


def cmd_discover(args) -> int:
    try:
        if args.values:
            with open(args.values) as fh:
                rows = [line.strip() for line in fh if line.strip()]
            prec = decimal_digits_to_bits(args.precision)
            xs = [BigFixed.from_decimal(row, prec) for row in rows]
        elif args.bbp:
            xs = _bbp_inputs(args.base, args.period, args.precision)
        else:
            print("nothing to do: pass --bbp or --values FILE", file=sys.stderr)
            return EXIT_NOT_FOUND
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NOT_FOUND

    if len(xs) < 2:
        print("none: a single input admits no nonzero integer relation", file=sys.stderr)
        return EXIT_NOT_FOUND
    result = pslq(RelationProblem(tuple(xs), max_coeff_bits=args.max_coeff_bits))
    if result.coefficients is None:
        print(f"none ({result.reason}): {result.diagnostic}", file=sys.stderr)
        return EXIT_NOT_FOUND
    print(" ".join(str(c) for c in result.coefficients))
    if args.bbp and args.base == 16 and args.period == 8:
        if result.coefficients not in (_CANONICAL_BBP, tuple(-c for c in _CANONICAL_BBP)):
            print("relation differs from the canonical digit-extraction vector", file=sys.stderr)
            return EXIT_MISMATCH
    return EXIT_OK


# ---------------------------------------------------------------- reference


def cmd_reference(args) -> int:
    try:
        ref = reference.bootstrap_reference(args.digits, args.base, _workers(args))
    except reference.CertificationError as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    out = args.out or f"pi_reference_{args.base}_{args.digits}.txt"
    command = f"piforge reference --digits {args.digits} --base {args.base} --out {os.path.basename(out)}"
    reference.write_reference_file(out, ref, command)
    print(f"wrote dual-certified {args.digits}-digit base-{args.base} reference to {out}")
    return EXIT_OK


# ---------------------------------------------------------------- catalog


def cmd_catalog(args) -> int:
    listing = {
        "classical": catalog_listing(),
        "series": catalog_report(),
        "machin": [
            {"id": f.id, "terms": list(f.terms), "target_quarters": f.target_quarters, "note": f.note}
            for f in MACHIN_FORMULAS.values()
        ],
        "digit_extraction": [
            {"id": f.id, "target": f.target, "extractable": f.extractable, "note": f.note}
            for f in FORMULAS.values()
        ],
    }
    print(json.dumps(listing, indent=2))
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="piforge",
        description="high-precision pi computation, verification, and digit extraction",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute pi digits to a file")
    p.add_argument("--algorithm", required=True)
    p.add_argument("--digits", type=int, required=True)
    p.add_argument("--hex", action="store_true", help="emit base-16 digits")
    p.add_argument("--out")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("digit", help="extract digits at a position without earlier digits")
    p.add_argument("--formula", required=True)
    p.add_argument("--position", type=int, required=True)
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--bits", type=int, default=None, help="emit binary digits at a bit position")
    p.add_argument("--cache", help="append-only digit cache file")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_digit)

    p = sub.add_parser("verify", help="run exact and numeric verification suites")
    p.add_argument("--suite", choices=["machin", "wz", "catalog", "series", "all"], default="all")
    p.add_argument("--digits", type=int)
    p.add_argument("--grid", type=int, default=40)
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="benchmark algorithms and emit convergence reports")
    p.add_argument("--algorithms", default="")
    p.add_argument("--digits", type=int, default=1000)
    p.add_argument("--json-out")
    p.add_argument("--no-figure", action="store_true")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("discover", help="PSLQ integer-relation search")
    p.add_argument("--bbp", action="store_true", help="build pi plus base-16 component sums")
    p.add_argument("--base", type=int, default=16)
    p.add_argument("--period", type=int, default=8)
    p.add_argument("--precision", type=int, default=120, help="working precision in decimal digits")
    p.add_argument("--max-coeff-bits", type=int, default=64)
    p.add_argument("--values", help="file of decimal constants, one per line")
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("reference", help="generate a dual-certified reference digit file")
    p.add_argument("--digits", type=int, required=True)
    p.add_argument("--base", type=int, default=10, choices=[10, 16])
    p.add_argument("--out")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_reference)

    p = sub.add_parser("catalog", help="print the structured formula listing")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
