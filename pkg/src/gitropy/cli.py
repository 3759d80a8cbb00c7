"""Command line interface: analyze, correlate, outliers, plot, calibrate, fixture."""

from __future__ import annotations

import argparse
import os
import sys
import time

from .config import DEFAULT_MAX_FILE_BYTES, RunConfig
from .gitio import RepositoryError
from .history import walk_history
from .measure import ALL_METRICS
from .plots import PLOT_KINDS, UnknownPlotKindError
from .report import (
    SeriesFormatError,
    build_summary,
    fmt_num,
    outlier_text,
    read_labels,
    read_series,
    write_matrix,
    write_matrix_meta,
    write_outliers_csv,
    write_series,
    write_summary,
)
from .stats import (
    SeriesTooShortError,
    calibrate,
    classic_correlation_matrix,
    classify_correlation,
    entropy_correlation_matrix,
    iqr_outliers,
)
from .tokens import load_stoplist

CACHE_ENV_VAR = "GITROPY_CACHE_DIR"

EXIT_OK = 0
EXIT_BAD_REPO = 2
EXIT_IO = 3
EXIT_BAD_INPUT = 4
EXIT_BAD_KIND = 5


class LabelsMismatchError(ValueError):
    """Labels file does not line up with the walked commits."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gitropy",
        description=(
            "Replay a git repository's history and measure structural and "
            "textual entropy per commit."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="walk a repository into series.csv")
    analyze.add_argument("repo", help="path to a local git repository")
    analyze.add_argument("--out", required=True, help="output directory")
    _add_measurement_options(analyze)
    analyze.set_defaults(func=cmd_analyze)

    correlate = sub.add_parser("correlate", help="write both correlation matrices")
    correlate.add_argument("series", help="series.csv from analyze")
    correlate.add_argument("--out", required=True, help="output directory")
    correlate.set_defaults(func=cmd_correlate)

    outliers = sub.add_parser("outliers", help="IQR outlier report per metric")
    outliers.add_argument("series", help="series.csv from analyze")
    outliers.add_argument(
        "--factor", action="append", type=float, default=None,
        help="IQR fence factor, repeatable (default: 1.5 and 3.0)",
    )
    outliers.add_argument("--out", help="also write outliers.csv to this directory")
    outliers.set_defaults(func=cmd_outliers)

    plot = sub.add_parser("plot", help="render a static vector plot")
    plot.add_argument("series", help="series.csv from analyze")
    plot.add_argument("--kind", required=True, help="history | per-file | heatmap")
    plot.add_argument("--out", required=True, help="output file (.svg/.pdf)")
    plot.set_defaults(func=cmd_plot)

    cal = sub.add_parser("calibrate", help="correlate deltas with expectation labels")
    cal.add_argument("repo", help="path to a local git repository")
    cal.add_argument("--labels", required=True, help="labels.csv (commit,label)")
    _add_measurement_options(cal)
    cal.set_defaults(func=cmd_calibrate)

    fixture = sub.add_parser("fixture", help="generate the labeled calibration repo")
    fixture.add_argument("--out", required=True, help="output directory")
    fixture.set_defaults(func=cmd_fixture)
    return parser


def _add_measurement_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--ext", action="append", default=None,
        help="file extension to measure, repeatable (default .java)",
    )
    sub.add_argument("--stoplist", help="stoplist file (one word per line)")
    sub.add_argument(
        "--cache", default=None,
        help=f"cache directory or 'off' (default: ${CACHE_ENV_VAR} or off)",
    )
    sub.add_argument(
        "--include-comments", action=argparse.BooleanOptionalAction, default=True,
        help="tokenize comment text too (default on)",
    )
    sub.add_argument(
        "--skip-merges", action="store_true",
        help="do not visit merge commits at all",
    )
    sub.add_argument(
        "--max-file-bytes", type=int, default=DEFAULT_MAX_FILE_BYTES,
        help="skip blobs larger than this many bytes",
    )


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    stoplist = None
    if args.stoplist:
        stoplist = load_stoplist(args.stoplist)
    extensions = tuple(args.ext) if args.ext else (".java",)
    kwargs = dict(
        extensions=extensions,
        include_comments=args.include_comments,
        merge_policy="skip" if args.skip_merges else "first-parent",
        max_file_bytes=args.max_file_bytes,
    )
    if stoplist is not None:
        kwargs["stoplist"] = stoplist
    return RunConfig(**kwargs)


def _cache_dir_from_args(args: argparse.Namespace) -> str | None:
    cache = args.cache
    if cache is None:
        cache = os.environ.get(CACHE_ENV_VAR) or None
    if cache is None or cache == "off":
        return None
    return cache


def cmd_analyze(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    started = time.monotonic()
    series = walk_history(args.repo, config, cache_dir=_cache_dir_from_args(args))
    runtime = time.monotonic() - started
    os.makedirs(args.out, exist_ok=True)
    series_path = os.path.join(args.out, "series.csv")
    write_series(series, series_path)
    summary = build_summary(series, runtime, config.echo())
    write_summary(summary, os.path.join(args.out, "summary.json"))
    print(
        f"analyzed {len(series)} commits from {series.repo_id} "
        f"in {runtime:.2f}s -> {series_path}"
    )
    return EXIT_OK


def cmd_correlate(args: argparse.Namespace) -> int:
    series = read_series(args.series)
    entropy_matrix = entropy_correlation_matrix(series)
    classic_matrix = classic_correlation_matrix(series)
    os.makedirs(args.out, exist_ok=True)
    write_matrix(entropy_matrix, os.path.join(args.out, "entropy_matrix.csv"))
    write_matrix(classic_matrix, os.path.join(args.out, "classic_matrix.csv"))
    write_matrix_meta(
        [entropy_matrix, classic_matrix],
        os.path.join(args.out, "correlate_meta.json"),
    )
    print(f"wrote entropy_matrix.csv and classic_matrix.csv to {args.out}")
    return EXIT_OK


def cmd_outliers(args: argparse.Namespace) -> int:
    series = read_series(args.series)
    factors = args.factor or [1.5, 3.0]
    reports = []
    for metric in ALL_METRICS:
        deltas = series.deltas(metric)
        for factor in factors:
            report = iqr_outliers(deltas, factor, metric=metric)
            reports.append(report)
            print(outlier_text(report, series))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        write_outliers_csv(reports, series, os.path.join(args.out, "outliers.csv"))
    return EXIT_OK


def cmd_plot(args: argparse.Namespace) -> int:
    from .plots import render_plot

    if args.kind not in PLOT_KINDS:
        raise UnknownPlotKindError(f"unknown plot kind: {args.kind!r}")
    series = read_series(args.series)
    if not series.records:
        raise SeriesFormatError("series file has no commit rows")
    render_plot(series, args.kind, args.out)
    print(f"wrote {args.kind} plot to {args.out}")
    return EXIT_OK


def cmd_calibrate(args: argparse.Namespace) -> int:
    labels = read_labels(args.labels)
    config = _config_from_args(args)
    series = walk_history(args.repo, config, cache_dir=_cache_dir_from_args(args))
    if len(labels) != len(series):
        raise LabelsMismatchError(
            f"{len(labels)} labels for {len(series)} commits"
        )
    for (commit, _), record in zip(labels, series.records):
        if commit != record.commit_hash:
            raise LabelsMismatchError(
                f"label order mismatch at seq {record.sequence_index}: "
                f"{commit} != {record.commit_hash}"
            )
    result = calibrate(series, [label for _, label in labels])
    print("metric          rho        category   sign_mismatches")
    for metric in ALL_METRICS:
        rho = result.rho[metric]
        rho_text = "n/a" if rho is None else fmt_num(rho)
        category = "n/a" if rho is None else classify_correlation(rho)
        print(
            f"{metric:<15s} {rho_text:<10s} {category:<10s} "
            f"{result.sign_mismatches[metric]}"
        )
    return EXIT_OK


def cmd_fixture(args: argparse.Namespace) -> int:
    from .fixture import generate_calibration_fixture

    result = generate_calibration_fixture(args.out)
    print(f"fixture repository: {result.repo_path}")
    print(f"labels file: {result.labels_path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RepositoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_REPO
    except UnknownPlotKindError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_KIND
    except (SeriesFormatError, SeriesTooShortError, LabelsMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except BrokenPipeError:
        # Downstream consumer (e.g. `head`) closed our stdout; not an error.
        try:
            sys.stdout.close()
        except OSError:
            pass
        return EXIT_OK
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
