from __future__ import annotations

import os
import xml.etree.ElementTree as ET

import pytest

from gitropy.cli import main
from gitropy.report import SERIES_COLUMNS


@pytest.fixture(scope="module")
def analyzed(calibration, tmp_path_factory):
    """Fixture repo analyzed once; yields (series_csv, out_dir)."""
    out = str(tmp_path_factory.mktemp("analyzed"))
    assert main(["analyze", calibration.repo_path, "--out", out]) == 0
    return os.path.join(out, "series.csv"), out


class TestAnalyze:
    def test_outputs_and_header(self, analyzed):
        series_csv, out = analyzed
        with open(series_csv) as handle:
            header = handle.readline().rstrip("\n")
        assert header == ",".join(SERIES_COLUMNS)
        assert os.path.exists(os.path.join(out, "summary.json"))

    def test_rerun_is_byte_identical(self, calibration, analyzed, tmp_path):
        series_csv, _ = analyzed
        out2 = str(tmp_path / "again")
        assert main(["analyze", calibration.repo_path, "--out", out2]) == 0
        with open(series_csv, "rb") as a, open(
            os.path.join(out2, "series.csv"), "rb"
        ) as b:
            assert a.read() == b.read()

    def test_invalid_repo_exits_2(self, tmp_path, capsys):
        empty = tmp_path / "not-a-repo"
        empty.mkdir()
        assert main(["analyze", str(empty), "--out", str(tmp_path / "o")]) == 2
        message = capsys.readouterr().err
        assert str(empty) in message

    def test_missing_path_exits_2(self, tmp_path):
        missing = str(tmp_path / "nowhere")
        assert main(["analyze", missing, "--out", str(tmp_path / "o")]) == 2

    def test_cache_env_var(self, calibration, tmp_path, monkeypatch):
        cache = tmp_path / "envcache"
        monkeypatch.setenv("GITROPY_CACHE_DIR", str(cache))
        out = str(tmp_path / "out")
        assert main(["analyze", calibration.repo_path, "--out", out]) == 0
        assert cache.is_dir() and os.listdir(cache)

    def test_cache_off_overrides_env(self, calibration, tmp_path, monkeypatch):
        cache = tmp_path / "never"
        monkeypatch.setenv("GITROPY_CACHE_DIR", str(cache))
        out = str(tmp_path / "out")
        assert main(
            ["analyze", calibration.repo_path, "--out", out, "--cache", "off"]
        ) == 0
        assert not cache.exists()


class TestCorrelate:
    def test_writes_matrices(self, analyzed, tmp_path):
        series_csv, _ = analyzed
        out = str(tmp_path / "corr")
        assert main(["correlate", series_csv, "--out", out]) == 0
        entropy_csv = open(os.path.join(out, "entropy_matrix.csv")).read()
        assert entropy_csv.count("\n") == 9  # header + 8 rows
        assert "strong" in entropy_csv or "perfect" in entropy_csv
        assert os.path.exists(os.path.join(out, "classic_matrix.csv"))
        assert os.path.exists(os.path.join(out, "correlate_meta.json"))

    def test_single_row_series_exits_4(self, tmp_path):
        path = tmp_path / "short.csv"
        header = ",".join(SERIES_COLUMNS)
        row = ["0", "a" * 40, "1", "1", "0", "1"] + ["0"] * 20
        path.write_text(header + "\n" + ",".join(row) + "\n")
        assert main(["correlate", str(path), "--out", str(tmp_path / "o")]) == 4

    def test_malformed_series_exits_4(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("nope\n")
        assert main(["correlate", str(path), "--out", str(tmp_path / "o")]) == 4


class TestOutliers:
    def test_reports_and_csv(self, analyzed, tmp_path, capsys):
        series_csv, _ = analyzed
        out = str(tmp_path / "outl")
        assert main(["outliers", series_csv, "--out", out]) == 0
        stdout = capsys.readouterr().out
        assert "metric=struct factor=1.5" in stdout
        assert "metric=struct factor=3" in stdout
        assert os.path.exists(os.path.join(out, "outliers.csv"))

    def test_custom_factor(self, analyzed, capsys):
        series_csv, _ = analyzed
        assert main(["outliers", series_csv, "--factor", "2.5"]) == 0
        stdout = capsys.readouterr().out
        assert "factor=2.5" in stdout
        assert "factor=1.5" not in stdout

    def test_too_short_exits_4(self, tmp_path):
        path = tmp_path / "short.csv"
        header = ",".join(SERIES_COLUMNS)
        rows = []
        for i in range(3):
            rows.append(",".join([str(i), "a" * 40, "1", "1", "0", "1"] + ["0"] * 20))
        path.write_text(header + "\n" + "\n".join(rows) + "\n")
        assert main(["outliers", str(path)]) == 4


class TestPlot:
    @pytest.mark.parametrize("kind", ["history", "per-file", "heatmap"])
    def test_kinds_produce_wellformed_svg(self, analyzed, tmp_path, kind):
        series_csv, _ = analyzed
        out = str(tmp_path / f"{kind}.svg")
        assert main(["plot", series_csv, "--kind", kind, "--out", out]) == 0
        root = ET.parse(out).getroot()
        assert root.tag.endswith("svg")
        assert os.path.getsize(out) > 1000

    def test_unknown_kind_exits_5(self, analyzed, tmp_path):
        series_csv, _ = analyzed
        out = str(tmp_path / "x.svg")
        assert main(["plot", series_csv, "--kind", "pie", "--out", out]) == 5

    def test_empty_series_exits_4(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text(",".join(SERIES_COLUMNS) + "\n")
        out = str(tmp_path / "x.svg")
        assert main(["plot", str(path), "--kind", "history", "--out", out]) == 4

    def test_heatmap_endpoint_is_darkest(self):
        from gitropy.plots import correlation_color

        darkest = correlation_color(1.0)
        mid = correlation_color(0.5)
        white = correlation_color(0.0)
        assert sum(darkest[:3]) < sum(mid[:3]) < sum(white[:3])
        assert white[:3] == pytest.approx((1.0, 1.0, 1.0), abs=0.02)
        assert correlation_color(-0.4) == white
        assert correlation_color(None) == (1.0, 1.0, 1.0, 1.0)


class TestCalibrate:
    def test_fixture_labels(self, calibration, capsys):
        code = main(
            ["calibrate", calibration.repo_path, "--labels", calibration.labels_path]
        )
        assert code == 0
        stdout = capsys.readouterr().out
        struct_line = next(
            line for line in stdout.splitlines() if line.startswith("struct ")
        )
        rho = float(struct_line.split()[1])
        assert rho >= 0.9

    def test_reversed_labels(self, calibration, tmp_path, capsys):
        reversed_path = tmp_path / "reversed.csv"
        with open(calibration.labels_path) as handle:
            lines = handle.read().splitlines()
        out_lines = [lines[0]]
        for line in lines[1:]:
            commit, label = line.split(",")
            out_lines.append(f"{commit},{-int(label)}")
        reversed_path.write_text("\n".join(out_lines) + "\n")
        assert main(
            ["calibrate", calibration.repo_path, "--labels", str(reversed_path)]
        ) == 0
        stdout = capsys.readouterr().out
        struct_line = next(
            line for line in stdout.splitlines() if line.startswith("struct ")
        )
        assert float(struct_line.split()[1]) <= -0.9

    def test_all_zero_labels_reported_as_na(self, calibration, tmp_path, capsys):
        path = tmp_path / "zeros.csv"
        with open(calibration.labels_path) as handle:
            lines = handle.read().splitlines()
        out_lines = [lines[0]]
        for line in lines[1:]:
            commit, _ = line.split(",")
            out_lines.append(f"{commit},0")
        path.write_text("\n".join(out_lines) + "\n")
        assert main(["calibrate", calibration.repo_path, "--labels", str(path)]) == 0
        stdout = capsys.readouterr().out
        struct_line = next(
            line for line in stdout.splitlines() if line.startswith("struct ")
        )
        assert "n/a" in struct_line

    def test_label_count_mismatch_exits_4(self, calibration, tmp_path):
        path = tmp_path / "labels.csv"
        path.write_text("commit,label\nabcd,1\n")
        assert main(["calibrate", calibration.repo_path, "--labels", str(path)]) == 4

    def test_label_order_mismatch_exits_4(self, calibration, tmp_path):
        with open(calibration.labels_path) as handle:
            lines = handle.read().splitlines()
        lines[1], lines[2] = lines[2], lines[1]
        path = tmp_path / "labels.csv"
        path.write_text("\n".join(lines) + "\n")
        assert main(["calibrate", calibration.repo_path, "--labels", str(path)]) == 4


class TestFixtureCommand:
    def test_generates_repo_and_labels(self, tmp_path):
        out = str(tmp_path / "fx")
        assert main(["fixture", "--out", out]) == 0
        assert os.path.isdir(os.path.join(out, "repo", ".git"))
        assert os.path.exists(os.path.join(out, "labels.csv"))
