"""Timing harness comparing the determinant method with the baseline."""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass

import numpy as np

from .baseline import decompose_baseline
from .detdiag import decompose_det
from .sympbase import random_covariance

CSV_COLUMNS = ("d", "method", "median_ms", "max_residual")

METHODS = {
    "det": decompose_det,
    "baseline": decompose_baseline,
}


@dataclass
class BenchRow:
    d: int
    method: str
    median_ms: float
    max_residual: float


def bench_lambdas(d, rng):
    """Distinct eigenvalues in ``[1, 5]`` with relative gaps of at least 1e-2."""
    while True:
        lam = np.sort(rng.uniform(1.0, 5.0, size=d))[::-1]
        if d == 1 or np.min(-np.diff(lam)) >= 0.05:
            return lam


def run_bench(modes=(2, 4, 8), trials=5, seed=0, methods=("det", "baseline")):
    rng = np.random.default_rng(seed)
    rows = []
    for d in modes:
        instances = [random_covariance(d, bench_lambdas(d, rng), seed=int(rng.integers(2**31))) for _ in range(trials)]
        for name in methods:
            fn = METHODS[name]
            times, worst = [], 0.0
            for inst in instances:
                t0 = time.perf_counter()
                out = fn(inst.V)
                times.append((time.perf_counter() - t0) * 1e3)
                worst = max(worst, out.residual_symp, out.residual_rec)
            rows.append(BenchRow(d, name, statistics.median(times), worst))
    return rows


def to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([r.d, r.method, f"{r.median_ms:.6f}", f"{r.max_residual:.3e}"])
    return buf.getvalue()


def to_table(rows):
    lines = [f"{'d':>4}  {'method':<10} {'median_ms':>12} {'max_residual':>13}"]
    for r in rows:
        lines.append(f"{r.d:>4}  {r.method:<10} {r.median_ms:>12.4f} {r.max_residual:>13.3e}")
    return "\n".join(lines) + "\n"
