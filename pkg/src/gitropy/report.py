"""Persistent output schemas: series CSV, summary JSON, matrices, outliers.

Numeric cells are serialized with 9 significant digits and a plain decimal
point; parsing a series file and re-serializing it reproduces the bytes.
"""

from __future__ import annotations

import csv
import json
from typing import Iterable

from .history import AnalysisSeries, CommitRecord
from .measure import ALL_METRICS
from .stats import CorrelationMatrix, OutlierReport, classify_correlation

SERIES_COLUMNS = (
    "seq", "commit", "timestamp", "files_changed", "parse_failures",
    "live_files",
    "d_struct", "d_tok_full", "d_tok_nokw", "d_tok_nokwnum",
    "d_struct_norm", "d_tok_full_norm", "d_tok_nokw_norm", "d_tok_nokwnum_norm",
    "c_struct", "c_tok_full", "c_tok_nokw", "c_tok_nokwnum",
    "c_struct_norm", "c_tok_full_norm", "c_tok_nokw_norm", "c_tok_nokwnum_norm",
    "mod_lines", "mod_tokens", "cc_after", "cc_delta",
)


class SeriesFormatError(ValueError):
    """The series file does not follow the expected schema."""


def fmt_num(value: float) -> str:
    """Locale-independent decimal with 9 significant digits."""
    if value == 0:
        value = 0.0  # normalize -0.0
    return format(float(value), ".9g")


def round_trip(value: float) -> float:
    """The float that the serialized form of ``value`` parses back to."""
    return float(fmt_num(value))


def record_row(record: CommitRecord) -> list[str]:
    row = [
        str(record.sequence_index),
        record.commit_hash,
        str(record.timestamp),
        str(record.files_changed),
        str(record.parse_failures),
        str(record.live_files),
    ]
    row += [fmt_num(record.delta[m]) for m in ALL_METRICS]
    row += [fmt_num(record.cumulative[m]) for m in ALL_METRICS]
    row += [
        str(record.modified_lines),
        str(record.modified_tokens),
        str(record.cc_after_sum),
        str(record.cc_delta),
    ]
    return row


def write_series(series: AnalysisSeries, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(SERIES_COLUMNS)
        for record in series.records:
            writer.writerow(record_row(record))


def read_series(path: str) -> AnalysisSeries:
    """Parse a series CSV back into an AnalysisSeries (repo metadata empty)."""
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header != list(SERIES_COLUMNS):
                raise SeriesFormatError(f"unexpected header in {path}")
            records = []
            for row in reader:
                if len(row) != len(SERIES_COLUMNS):
                    raise SeriesFormatError(
                        f"row {len(records)} has {len(row)} fields"
                    )
                records.append(_record_from_row(row))
    except OSError as exc:
        raise SeriesFormatError(f"cannot read series file: {exc}") from exc
    for i, record in enumerate(records):
        if record.sequence_index != i:
            raise SeriesFormatError("sequence indices are not dense from 0")
    return AnalysisSeries(repo_id="", config_fingerprint="", records=records)


def _record_from_row(row: list[str]) -> CommitRecord:
    try:
        deltas = {m: float(v) for m, v in zip(ALL_METRICS, row[6:14])}
        cumulative = {m: float(v) for m, v in zip(ALL_METRICS, row[14:22])}
        return CommitRecord(
            commit_hash=row[1],
            sequence_index=int(row[0]),
            timestamp=int(row[2]),
            files_changed=int(row[3]),
            parse_failures=int(row[4]),
            live_files=int(row[5]),
            delta=deltas,
            cumulative=cumulative,
            modified_lines=int(row[22]),
            modified_tokens=int(row[23]),
            cc_after_sum=int(row[24]),
            cc_delta=int(row[25]),
        )
    except ValueError as exc:
        raise SeriesFormatError(f"malformed series row: {exc}") from exc


def build_summary(
    series: AnalysisSeries, runtime_seconds: float, config_echo: dict
) -> dict:
    last = series.records[-1] if series.records else None
    final = {
        f"c_{m}": (round_trip(last.cumulative[m]) if last else 0.0)
        for m in ALL_METRICS
    }
    return {
        "repo": series.repo_id,
        "commits": len(series),
        "runtime_seconds": round(runtime_seconds, 3),
        "final_cumulative": final,
        "live_files": last.live_files if last else 0,
        "parse_failures": last.parse_failures if last else 0,
        "skipped_files_total": sum(r.skipped_files for r in series.records),
        "config": config_echo,
    }


def write_summary(summary: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(summary, handle, indent=2)
        handle.write("\n")


def write_matrix(matrix: CorrelationMatrix, path: str) -> None:
    """Matrix CSV: rho values with the Dancey-Reidy category per cell."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["metric"] + list(matrix.col_labels))
        for label, row in zip(matrix.row_labels, matrix.rho):
            cells = [
                "n/a" if rho is None
                else f"{fmt_num(rho)} ({classify_correlation(rho)})"
                for rho in row
            ]
            writer.writerow([label] + cells)


def write_matrix_meta(
    matrices: Iterable[CorrelationMatrix], path: str
) -> None:
    payload = [
        {
            "rows": m.row_labels,
            "cols": m.col_labels,
            "method": m.method,
            "basis": m.basis,
        }
        for m in matrices
    ]
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")


def outlier_text(
    report: OutlierReport, series: AnalysisSeries
) -> str:
    """Human-readable block for one (metric, factor) outlier report."""
    lines = [
        f"metric={report.metric} factor={fmt_num(report.factor)} "
        f"[{report.quantile_scheme}]",
        f"  q1={fmt_num(report.q1)} q3={fmt_num(report.q3)} "
        f"iqr={fmt_num(report.iqr)} "
        f"fences=[{fmt_num(report.lower_fence)}, {fmt_num(report.upper_fence)}]",
        f"  outliers={len(report.outlier_indices)}/{len(series)} "
        f"fraction={fmt_num(report.fraction)}",
    ]
    deltas = series.deltas(report.metric) if report.metric in ALL_METRICS else None
    for idx in report.outlier_indices:
        record = series.records[idx]
        delta = deltas[idx] if deltas else float("nan")
        lines.append(
            f"    seq={idx} commit={record.commit_hash} delta={fmt_num(delta)}"
        )
    return "\n".join(lines)


def write_outliers_csv(
    reports: list[OutlierReport], series: AnalysisSeries, path: str
) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(
            ["metric", "factor", "seq", "commit", "delta",
             "lower_fence", "upper_fence", "fraction"]
        )
        for report in reports:
            deltas = series.deltas(report.metric)
            for idx in report.outlier_indices:
                writer.writerow(
                    [
                        report.metric,
                        fmt_num(report.factor),
                        str(idx),
                        series.records[idx].commit_hash,
                        fmt_num(deltas[idx]),
                        fmt_num(report.lower_fence),
                        fmt_num(report.upper_fence),
                        fmt_num(report.fraction),
                    ]
                )


def write_labels(rows: list[tuple[str, int]], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["commit", "label"])
        for commit, label in rows:
            writer.writerow([commit, str(label)])


def read_labels(path: str) -> list[tuple[str, int]]:
    """Labels CSV: commit_hash,label with label in {-1, 0, 1}."""
    rows: list[tuple[str, int]] = []
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            for row in reader:
                if not row or (row[0] == "commit" and not rows):
                    continue
                if len(row) < 2:
                    raise SeriesFormatError(f"malformed labels row: {row!r}")
                label = int(row[1])
                if label not in (-1, 0, 1):
                    raise SeriesFormatError(f"label out of range: {label}")
                rows.append((row[0], label))
    except OSError as exc:
        raise SeriesFormatError(f"cannot read labels file: {exc}") from exc
    except ValueError as exc:
        raise SeriesFormatError(f"malformed labels file: {exc}") from exc
    return rows
