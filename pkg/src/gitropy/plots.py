"""Static vector-graphic plots: history curves, per-file curve, heatmap.

matplotlib is imported lazily so that importing this module (for the kind
names and error type) stays cheap.
"""

from __future__ import annotations

import os

from .history import AnalysisSeries
from .measure import RAW_METRICS
from .stats import entropy_correlation_matrix, per_file_series

PLOT_KINDS = ("history", "per-file", "heatmap")


class UnknownPlotKindError(ValueError):
    """Requested plot kind is not one of PLOT_KINDS."""


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


_RAMP_DARKEST = (0.0, 0.267, 0.106)  # dark green


def correlation_color(rho: float | None) -> tuple[float, float, float, float]:
    """White-to-dark ramp: 0 (and undefined/negative) is white, 1 is darkest."""
    if rho is None:
        return (1.0, 1.0, 1.0, 1.0)
    t = min(max(rho, 0.0), 1.0)
    r, g, b = (1.0 - t * (1.0 - c) for c in _RAMP_DARKEST)
    return (r, g, b, 1.0)


def render_plot(series: AnalysisSeries, kind: str, out_path: str) -> None:
    if kind not in PLOT_KINDS:
        raise UnknownPlotKindError(f"unknown plot kind: {kind!r}")
    if not series.records:
        raise ValueError("cannot plot an empty series")
    plt = _pyplot()
    if kind == "history":
        fig = _history_figure(plt, series)
    elif kind == "per-file":
        fig = _per_file_figure(plt, series)
    else:
        fig = _heatmap_figure(plt, series)
    fmt = os.path.splitext(out_path)[1].lstrip(".").lower() or "svg"
    fig.savefig(out_path, format=fmt)
    plt.close(fig)


def _history_figure(plt, series: AnalysisSeries):
    seq = series.ints("sequence_index")
    fig, ax = plt.subplots(figsize=(9, 5.5))
    for metric in RAW_METRICS:
        ax.plot(seq, series.cumulatives(metric), label=f"c_{metric}")
    for metric in RAW_METRICS:
        ax.plot(
            seq,
            series.cumulatives(f"{metric}_norm"),
            linestyle="--",
            label=f"c_{metric}_norm",
        )
    ax.set_xlabel("commit count")
    ax.set_ylabel("bits")
    ax.set_title("Cumulative entropy by commit")
    ax.legend(fontsize=8, ncol=2)
    fig.tight_layout()
    return fig


def _per_file_figure(plt, series: AnalysisSeries):
    seq = series.ints("sequence_index")
    fig, ax = plt.subplots(figsize=(9, 5.5))
    ax.plot(seq, per_file_series(series), color="darkgreen")
    ax.set_xlabel("commit count")
    ax.set_ylabel("bits")
    ax.set_title("Structural entropy per live file")
    fig.tight_layout()
    return fig


def _heatmap_figure(plt, series: AnalysisSeries):
    import numpy as np

    matrix = entropy_correlation_matrix(series)
    n = len(matrix.row_labels)
    colors = np.ones((n, n, 4))
    for i in range(n):
        for j in range(n):
            colors[i, j] = correlation_color(matrix.rho[i][j])
    fig, ax = plt.subplots(figsize=(7.5, 6.5))
    ax.imshow(colors, interpolation="nearest")
    ax.set_xticks(range(n), matrix.col_labels, rotation=45, ha="right", fontsize=8)
    ax.set_yticks(range(n), matrix.row_labels, fontsize=8)
    for i in range(n):
        for j in range(n):
            rho = matrix.rho[i][j]
            text = "n/a" if rho is None else f"{rho:.2f}"
            dark = rho is not None and rho > 0.6
            ax.text(
                j, i, text,
                ha="center", va="center", fontsize=7,
                color="white" if dark else "black",
            )
    ax.set_title("Spearman correlation of cumulative entropy curves")
    fig.tight_layout()
    return fig
