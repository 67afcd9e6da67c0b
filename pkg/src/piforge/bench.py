"""Benchmark harness: runs algorithms at a digit target, logs per-step
correct digits against the certified reference, and emits a schema-versioned
JSON report plus a timing-free CSV of the convergence logs and a rendered
figure of the digits-vs-step curves.

The CSV and the convergence entries in the JSON are byte-reproducible
across runs and worker counts; wall times live only in the JSON and are
excluded from any reproducibility comparison.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass

from . import reference
from .bigfixed import decimal_digits_to_bits
from .hyperseries import SPEC_CATALOG, plan_terms, split_partial_sum, sum_to_digits
from .iterative import (
    agm_trace,
    archimedes_trace,
    iterations_for_digits,
    quartic_trace,
)

SCHEMA = "bench/1"

__all__ = ["SCHEMA", "AlgorithmBench", "bench_algorithms", "write_report", "render_figure", "BENCH_ALGORITHMS"]


@dataclass
class AlgorithmBench:
    algorithm: str
    requested_digits: int
    achieved_digits: int
    steps: int
    wall_time: float
    convergence: list  # [(step, correct_digits), ...]
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "requested_digits": self.requested_digits,
            "achieved_digits": self.achieved_digits,
            "steps": self.steps,
            "wall_time": self.wall_time,
            "convergence": [{"step": s, "correct_digits": d} for s, d in self.convergence],
            "error": self.error,
        }


def _series_checkpoints(n_terms: int) -> list[int]:
    out = []
    k = 1
    while k < n_terms:
        out.append(k)
        k *= 2
    out.append(n_terms)
    return out


def _bench_iterative(algorithm: str, digits: int) -> AlgorithmBench:
    prec = decimal_digits_to_bits(digits) + 16
    steps = iterations_for_digits(algorithm.split("-")[0], digits)
    start = time.perf_counter()
    if algorithm == "archimedes":
        prec = max(prec, 2 * steps + 32)
        trace = archimedes_trace(steps, prec)
        log = [
            (st.n, reference.correct_digits((st.inscribed + st.circumscribed).mul_pow2(-1)))
            for st in trace
        ]
    elif algorithm == "agm":
        trace = agm_trace(steps, prec)
        log = [(st.k, reference.correct_digits(st.pi_estimate)) for st in trace]
    elif algorithm in ("quartic-a", "quartic-b"):
        variant = algorithm[-1].upper()
        trace = quartic_trace(steps, prec, variant)
        log = [(st.n, reference.correct_digits(st.pi_estimate)) for st in trace]
    else:
        raise ValueError(f"unknown iterative algorithm {algorithm!r}")
    elapsed = time.perf_counter() - start
    achieved = log[-1][1]
    return AlgorithmBench(algorithm, digits, achieved, steps, elapsed, log)


def _bench_series(algorithm: str, digits: int, workers: int) -> AlgorithmBench:
    spec = SPEC_CATALOG[algorithm]
    prec = decimal_digits_to_bits(digits) + 16
    n_terms = plan_terms(spec, digits)
    start = time.perf_counter()
    target = reference.pi_power(spec.target_power, prec + 8)
    pre = None
    log = []
    from .bigfixed import BigFixed
    from .exactnum import QuadSurd
    from .hyperseries import prefactor_value

    pre = prefactor_value(spec, prec)
    for ckpt in _series_checkpoints(n_terms):
        partial = split_partial_sum(spec, ckpt, workers if ckpt == n_terms else 1)
        value = partial.to_bigfixed(prec) if isinstance(partial, QuadSurd) else BigFixed.from_fraction(partial, prec)
        estimate = pre / value
        err = abs(estimate - target)
        bm = err.bit_magnitude()
        digits_ok = 0 if bm is None or bm > 0 else min(digits, int(-bm / 3.3219))
        log.append((ckpt, digits_ok))
    elapsed = time.perf_counter() - start
    return AlgorithmBench(algorithm, digits, log[-1][1], n_terms, elapsed, log)


BENCH_ALGORITHMS = ("archimedes", "agm", "quartic-a", "quartic-b") + tuple(SPEC_CATALOG)


def bench_algorithms(algorithms, digits: int, workers: int = 1) -> dict:
    """Run each algorithm and assemble the bench report."""
    results = []
    for algorithm in algorithms:
        try:
            if algorithm in ("archimedes", "agm", "quartic-a", "quartic-b"):
                results.append(_bench_iterative(algorithm, digits))
            elif algorithm in SPEC_CATALOG:
                results.append(_bench_series(algorithm, digits, workers))
            else:
                raise ValueError(f"unknown bench algorithm {algorithm!r}")
        except ValueError as exc:
            results.append(AlgorithmBench(algorithm, digits, 0, 0, 0.0, [], str(exc)))
    return {
        "schema": SCHEMA,
        "requested_digits": digits,
        "workers": workers,
        "results": [r.to_dict() for r in results],
    }


def write_report(report: dict, json_path, csv_path=None, fig_path=None) -> None:
    """Emit the JSON report plus optional delimited log and rendered figure."""
    with open(json_path, "w") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    if csv_path:
        with open(csv_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["algorithm", "step", "correct_digits"])
            for result in report["results"]:
                for row in result["convergence"]:
                    writer.writerow([result["algorithm"], row["step"], row["correct_digits"]])
    if fig_path:
        render_figure(report, fig_path)


def render_figure(report: dict, fig_path) -> None:
    """Digits-versus-step curves, one line per algorithm."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7.0, 4.4))
    for result in report["results"]:
        if not result["convergence"]:
            continue
        xs = [row["step"] for row in result["convergence"]]
        ys = [max(row["correct_digits"], 0.5) for row in result["convergence"]]
        ax.plot(xs, ys, marker="o", markersize=3, label=result["algorithm"])
    ax.set_xlabel("iteration / terms")
    ax.set_ylabel("correct decimal digits")
    ax.set_yscale("log")
    ax.set_title(f"convergence to {report['requested_digits']} digits")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(fig_path, dpi=120)
    plt.close(fig)
