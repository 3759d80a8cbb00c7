"""Statistical post-processing of an analysis series.

Spearman correlations over cumulative entropy curves and per-commit delta
magnitudes, IQR-based surprisal outlier detection, Dancey-Reidy correlation
categories, and calibration against expectation labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .history import AnalysisSeries
from .measure import ALL_METRICS, RAW_METRICS

CLASSIC_COLUMNS = ("mod_lines", "mod_tokens", "cc_after")

_CLASSIC_FIELDS = {
    "mod_lines": "modified_lines",
    "mod_tokens": "modified_tokens",
    "cc_after": "cc_after_sum",
}


class SeriesTooShortError(ValueError):
    """The series has fewer rows than the operation requires."""


def average_ranks(values: list[float]) -> np.ndarray:
    """Average fractional ranks (1-based); ties share the mean of their span."""
    arr = np.asarray(values, dtype=float)
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(len(arr), dtype=float)
    i = 0
    while i < len(arr):
        j = i
        while j + 1 < len(arr) and arr[order[j + 1]] == arr[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(x: list[float], y: list[float]) -> float | None:
    """Spearman rank correlation with tie-averaged ranks.

    Returns None (undefined) when either input is constant; raises on length
    mismatch or fewer than two points.
    """
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise SeriesTooShortError("need at least two points")
    rx = average_ranks(list(x))
    ry = average_ranks(list(y))
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    sx = float(np.sqrt((dx * dx).sum()))
    sy = float(np.sqrt((dy * dy).sum()))
    if sx == 0.0 or sy == 0.0:
        return None
    return float((dx * dy).sum() / (sx * sy))


@dataclass
class CorrelationMatrix:
    row_labels: list[str]
    col_labels: list[str]
    rho: list[list[float | None]]
    method: str = "spearman"
    basis: str = ""

    def cell(self, row: str, col: str) -> float | None:
        return self.rho[self.row_labels.index(row)][self.col_labels.index(col)]


def entropy_correlation_matrix(series: AnalysisSeries) -> CorrelationMatrix:
    """8x8 Spearman matrix over the cumulative curves of all entropy metrics."""
    if len(series) < 2:
        raise SeriesTooShortError("need at least two commits to correlate")
    curves = {m: series.cumulatives(m) for m in ALL_METRICS}
    labels = [f"c_{m}" for m in ALL_METRICS]
    rho = [
        [spearman(curves[a], curves[b]) for b in ALL_METRICS]
        for a in ALL_METRICS
    ]
    return CorrelationMatrix(labels, list(labels), rho, basis="cumulative-curves")


def classic_correlation_matrix(series: AnalysisSeries) -> CorrelationMatrix:
    """4x3 Spearman matrix: |raw entropy deltas| against classic change metrics."""
    if len(series) < 2:
        raise SeriesTooShortError("need at least two commits to correlate")
    rows = [f"abs_d_{m}" for m in RAW_METRICS]
    magnitudes = {
        m: [abs(v) for v in series.deltas(m)] for m in RAW_METRICS
    }
    classic = {
        name: [float(v) for v in series.ints(fieldname)]
        for name, fieldname in _CLASSIC_FIELDS.items()
    }
    rho = [
        [spearman(magnitudes[m], classic[c]) for c in CLASSIC_COLUMNS]
        for m in RAW_METRICS
    ]
    return CorrelationMatrix(
        rows, list(CLASSIC_COLUMNS), rho, basis="per-commit-deltas"
    )


@dataclass
class OutlierReport:
    metric: str
    factor: float
    q1: float
    q3: float
    iqr: float
    lower_fence: float
    upper_fence: float
    outlier_indices: list[int] = field(default_factory=list)
    fraction: float = 0.0
    quantile_scheme: str = "linear interpolation at (n-1)*q"


def quantile(values: list[float], q: float) -> float:
    """Order statistic at position (n-1)*q with linear interpolation."""
    ordered = sorted(values)
    h = (len(ordered) - 1) * q
    lo = math.floor(h)
    hi = min(lo + 1, len(ordered) - 1)
    return ordered[lo] + (h - lo) * (ordered[hi] - ordered[lo])


def iqr_outliers(
    values: list[float], factor: float, metric: str = ""
) -> OutlierReport:
    """Flag values outside [Q1 - factor*IQR, Q3 + factor*IQR]."""
    if len(values) < 4:
        raise SeriesTooShortError("need at least four values for quartiles")
    if factor <= 0:
        raise ValueError("factor must be positive")
    q1 = quantile(values, 0.25)
    q3 = quantile(values, 0.75)
    iqr = q3 - q1
    lower = q1 - factor * iqr
    upper = q3 + factor * iqr
    indices = [i for i, v in enumerate(values) if v < lower or v > upper]
    return OutlierReport(
        metric=metric,
        factor=factor,
        q1=q1,
        q3=q3,
        iqr=iqr,
        lower_fence=lower,
        upper_fence=upper,
        outlier_indices=indices,
        fraction=len(indices) / len(values),
    )


def per_file_series(series: AnalysisSeries) -> list[float]:
    """Cumulative structural entropy divided by live file count, per commit.

    Commits with no live files report 0.0 (there is nothing to average over).
    """
    out: list[float] = []
    for record in series.records:
        if record.live_files == 0:
            out.append(0.0)
        else:
            out.append(record.cumulative["struct"] / record.live_files)
    return out


def classify_correlation(rho: float) -> str:
    """Dancey-Reidy strength category for a correlation coefficient."""
    if not -1.0 <= rho <= 1.0:
        raise ValueError(f"correlation out of range: {rho}")
    magnitude = abs(rho)
    if magnitude == 1.0:
        return "perfect"
    if magnitude >= 0.7:
        return "strong"
    if magnitude >= 0.4:
        return "moderate"
    if magnitude >= 0.1:
        return "weak"
    return "none"


@dataclass
class CalibrationResult:
    rho: dict[str, float | None]
    sign_mismatches: dict[str, int]


def calibrate(series: AnalysisSeries, labels: list[int]) -> CalibrationResult:
    """Spearman between expectation labels (-1/0/+1) and per-commit deltas."""
    if len(labels) != len(series):
        raise ValueError(
            f"got {len(labels)} labels for {len(series)} commits"
        )
    rho: dict[str, float | None] = {}
    mismatches: dict[str, int] = {}
    label_values = [float(v) for v in labels]
    for metric in ALL_METRICS:
        deltas = series.deltas(metric)
        rho[metric] = spearman(label_values, deltas)
        signs = [0 if d == 0 else (1 if d > 0 else -1) for d in deltas]
        mismatches[metric] = sum(
            1 for sign, label in zip(signs, labels) if sign != label
        )
    return CalibrationResult(rho=rho, sign_mismatches=mismatches)
