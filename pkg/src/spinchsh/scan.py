"""Seeded Monte Carlo scan over random pure two-qutrit states.

Each sample is drawn from its own (seed, index) substream, piped through the
coefficient-tensor correlation route to the CHSH parameter gamma and the
concurrence, and folded into an order-independent reduction (max, counts,
histogram).  Reports are therefore byte-identical across worker counts.

A sample with gamma > 1 would refute the nonviolation conjecture; the scan
records such states in full rather than treating them as errors.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np

from .correlations import VIOLATION_TOL, correlation_from_coefficients, top_two_root
from .states import SAMPLERS, PureState, sample_amplitude_batch, sample_pure_state

logger = logging.getLogger(__name__)

# Fixed batch size; chunk boundaries must not depend on the worker count or
# the reduction would not be reproducible.
CHUNK = 8192
# Largest concurrence a two-qutrit state can have; histogram domain.
CONCURRENCE_MAX = 2 / math.sqrt(3)
# Samples this close to a product state are counted and logged.
LOW_CONCURRENCE = 1e-6
# At most this many conjecture counterexamples are serialized per report.
VIOLATION_RECORD_CAP = 100
# Number of leading samples kept verbatim in the report.
SAMPLE_ROW_COUNT = 50


@dataclass(frozen=True)
class ScanConfig:
    n_samples: int
    sampler: str = "uniform"
    seed: int = 0
    histogram_bins: int = 40
    workers: int = 1

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if self.sampler not in SAMPLERS:
            raise ValueError(f"unknown sampler {self.sampler!r}; choose from {SAMPLERS}")
        if self.histogram_bins < 1:
            raise ValueError("histogram_bins must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class ScanReport:
    n_samples: int
    sampler: str
    seed: int
    max_gamma: float
    argmax_index: int
    argmax_state: PureState
    violation_count: int
    histogram: list          # (bin_lo, bin_hi, count) triples covering [0, 2/sqrt(3)]
    sample_rows: list        # (amplitudes, gamma) for the first min(n, 50) samples
    min_concurrence: float
    low_concurrence_count: int
    violations: list         # (index, gamma, PureState), capped

    def to_json(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "sampler": self.sampler,
            "seed": self.seed,
            "max_gamma": float(self.max_gamma),
            "argmax_index": int(self.argmax_index),
            "argmax_state": self.argmax_state.to_json(),
            "violation_count": int(self.violation_count),
            "histogram": [[float(lo), float(hi), int(c)] for lo, hi, c in self.histogram],
            "sample_rows": [
                {"amplitudes": [[float(a.real), float(a.imag)] for a in amps],
                 "gamma": float(g)}
                for amps, g in self.sample_rows
            ],
            "min_concurrence": float(self.min_concurrence),
            "low_concurrence_count": int(self.low_concurrence_count),
            "violations": [
                {"index": int(i), "gamma": float(g), "state": st.to_json()}
                for i, g, st in self.violations
            ],
        }


def batch_gamma_concurrence(amplitudes: np.ndarray) -> tuple:
    """(gamma, concurrence) arrays for a batch of normalized amplitude rows."""
    b = amplitudes.shape[0]
    a = amplitudes.reshape(b, 3, 3)
    zeta = np.einsum("bmk,bpq->bmpkq", a, a.conj())
    z = correlation_from_coefficients(zeta)
    ev = np.linalg.eigvalsh(np.einsum("bji,bjk->bik", z, z))
    gamma = top_two_root(ev)
    reduced = np.einsum("bij,bkj->bik", a, a.conj())
    purity = np.einsum("bik,bik->b", reduced, reduced.conj()).real
    concurrence = np.sqrt(np.clip(2.0 * (1.0 - purity), 0.0, None))
    return gamma, concurrence


def _scan_chunk(args) -> dict:
    cfg, start, stop = args
    amps = sample_amplitude_batch((3, 3), cfg.sampler, cfg.seed, start, stop - start)
    gamma, conc = batch_gamma_concurrence(amps)
    edges = np.linspace(0.0, CONCURRENCE_MAX, cfg.histogram_bins + 1)
    hist, _ = np.histogram(np.clip(conc, 0.0, CONCURRENCE_MAX), bins=edges)
    local_arg = int(np.argmax(gamma))
    viol = np.nonzero(gamma > 1.0 + VIOLATION_TOL)[0]
    rows = []
    if start < SAMPLE_ROW_COUNT:
        take = min(stop, SAMPLE_ROW_COUNT) - start
        rows = [(amps[i].copy(), float(gamma[i])) for i in range(take)]
    return {
        "max_gamma": float(gamma[local_arg]),
        "argmax_index": start + local_arg,
        "violation_count": int(viol.size),
        "violation_pairs": [(start + int(i), float(gamma[i])) for i in viol],
        "hist": hist,
        "rows": rows,
        "min_concurrence": float(conc.min()),
        "low_concurrence_count": int((conc <= LOW_CONCURRENCE).sum()),
    }


def run_scan(cfg: ScanConfig) -> ScanReport:
    """Scan cfg.n_samples random pure two-qutrit states and reduce.

    The report is a pure function of (seed, n_samples, sampler,
    histogram_bins); the worker count only affects wall time.
    """
    tasks = [(cfg, start, min(start + CHUNK, cfg.n_samples))
             for start in range(0, cfg.n_samples, CHUNK)]
    if cfg.workers == 1 or len(tasks) == 1:
        parts = [_scan_chunk(t) for t in tasks]
    else:
        with Pool(processes=cfg.workers) as pool:
            parts = pool.map(_scan_chunk, tasks)

    max_gamma, argmax_index = -1.0, -1
    violation_count = 0
    violation_pairs = []
    hist = np.zeros(cfg.histogram_bins, dtype=np.int64)
    rows = []
    min_conc = math.inf
    low_conc = 0
    for part in parts:  # chunk order fixed by construction
        if part["max_gamma"] > max_gamma:
            max_gamma, argmax_index = part["max_gamma"], part["argmax_index"]
        violation_count += part["violation_count"]
        violation_pairs.extend(part["violation_pairs"])
        hist += part["hist"]
        rows.extend(part["rows"])
        min_conc = min(min_conc, part["min_concurrence"])
        low_conc += part["low_concurrence_count"]

    if low_conc:
        logger.warning("%d sample(s) had concurrence <= %.0e (near-product states)",
                       low_conc, LOW_CONCURRENCE)
    if violation_count:
        logger.warning("%d sample(s) exceeded gamma = 1: conjecture counterexample candidates",
                       violation_count)

    edges = np.linspace(0.0, CONCURRENCE_MAX, cfg.histogram_bins + 1)
    histogram = [(float(edges[i]), float(edges[i + 1]), int(hist[i]))
                 for i in range(cfg.histogram_bins)]

    def regenerate(idx):
        return sample_pure_state((3, 3), cfg.sampler, cfg.seed, idx)

    violations = [(i, g, regenerate(i))
                  for i, g in violation_pairs[:VIOLATION_RECORD_CAP]]
    return ScanReport(
        n_samples=cfg.n_samples,
        sampler=cfg.sampler,
        seed=cfg.seed,
        max_gamma=max_gamma,
        argmax_index=argmax_index,
        argmax_state=regenerate(argmax_index),
        violation_count=violation_count,
        histogram=histogram,
        sample_rows=rows,
        min_concurrence=min_conc,
        low_concurrence_count=low_conc,
        violations=violations,
    )


def table_rows(cfg: ScanConfig, k: int, decimals: int = 2) -> list:
    """First k sampled states as flat rows of rounded floats.

    Each row holds the 18 amplitude components (re, im interleaved in
    row-major state order) followed by gamma, all rounded to ``decimals``.
    """
    if k > cfg.n_samples:
        raise ValueError(f"k = {k} exceeds n_samples = {cfg.n_samples}")
    amps = sample_amplitude_batch((3, 3), cfg.sampler, cfg.seed, 0, k)
    gamma, _ = batch_gamma_concurrence(amps)
    rows = []
    for i in range(k):
        row = []
        for a in amps[i]:
            row.append(round(float(a.real), decimals))
            row.append(round(float(a.imag), decimals))
        row.append(round(float(gamma[i]), decimals))
        rows.append(row)
    return rows


def write_histogram_csv(path, report: ScanReport) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["bin_lo", "bin_hi", "count"])
        for lo, hi, count in report.histogram:
            writer.writerow([lo, hi, count])


def write_sample_rows_csv(path, rows) -> None:
    header = []
    for m in range(1, 4):
        for k in range(1, 4):
            header += [f"psi{m}{k}_re", f"psi{m}{k}_im"]
    header.append("gamma")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
