from __future__ import annotations

import math
import random

import pytest

from gitropy.history import AnalysisSeries, CommitRecord
from gitropy.measure import ALL_METRICS
from gitropy.stats import (
    SeriesTooShortError,
    calibrate,
    classic_correlation_matrix,
    classify_correlation,
    entropy_correlation_matrix,
    iqr_outliers,
    per_file_series,
    quantile,
    spearman,
)


# -- independent oracles -------------------------------------------------------

def oracle_ranks(values: list[float]) -> list[float]:
    """Rank by explicit counting: rank = #smaller + (#equal + 1) / 2."""
    ranks = []
    for v in values:
        smaller = sum(1 for u in values if u < v)
        equal = sum(1 for u in values if u == v)
        ranks.append(smaller + (equal + 1) / 2.0)
    return ranks


def oracle_pearson(x: list[float], y: list[float]) -> float | None:
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    if sxx == 0 or syy == 0:
        return None
    return sxy / math.sqrt(sxx * syy)


def oracle_spearman(x: list[float], y: list[float]) -> float | None:
    return oracle_pearson(oracle_ranks(x), oracle_ranks(y))


def oracle_quantile(values: list[float], q: float) -> float:
    """First-principles order-statistic interpolation at position q*(n-1)."""
    ordered = sorted(values)
    position = q * (len(ordered) - 1)
    below = int(position)
    fraction = position - below
    if below + 1 >= len(ordered):
        return ordered[-1]
    return ordered[below] + fraction * (ordered[below + 1] - ordered[below])


def make_series(columns: dict[str, list[float]], **int_columns) -> AnalysisSeries:
    """Build a synthetic AnalysisSeries from per-metric delta lists."""
    length = len(next(iter(columns.values())))
    records = []
    cumulative = {m: 0.0 for m in ALL_METRICS}
    for i in range(length):
        delta = {m: columns.get(m, [0.0] * length)[i] for m in ALL_METRICS}
        for m in ALL_METRICS:
            cumulative[m] += delta[m]
        records.append(
            CommitRecord(
                commit_hash=f"{i:040x}",
                sequence_index=i,
                timestamp=1700000000 + i,
                files_changed=1,
                parse_failures=0,
                live_files=int_columns.get("live_files", [1] * length)[i],
                delta=delta,
                cumulative=dict(cumulative),
                modified_lines=int_columns.get("modified_lines", [1] * length)[i],
                modified_tokens=int_columns.get("modified_tokens", [1] * length)[i],
                cc_after_sum=int_columns.get("cc_after_sum", [1] * length)[i],
                cc_delta=0,
            )
        )
    return AnalysisSeries("synthetic", "", records)


class TestSpearman:
    def test_strictly_monotone_is_one(self):
        assert spearman([1, 2, 3, 4], [10, 20, 30, 40]) == pytest.approx(1.0)

    def test_reversed_is_minus_one(self):
        assert spearman([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)

    def test_tied_example_matches_oracle(self):
        x, y = [1, 2, 2, 4], [1, 3, 2, 4]
        assert spearman(x, y) == pytest.approx(oracle_spearman(x, y), abs=1e-12)

    def test_constant_input_is_undefined(self):
        assert spearman([1, 1, 1], [1, 2, 3]) is None
        assert spearman([1, 2, 3], [5, 5, 5]) is None

    def test_length_mismatch_raises(self):
        with pytest.raises(ValueError):
            spearman([1, 2], [1, 2, 3])

    def test_too_short_raises(self):
        with pytest.raises(SeriesTooShortError):
            spearman([1], [2])

    def test_symmetry_and_monotone_transform(self):
        rng = random.Random(5)
        for _ in range(50):
            n = rng.randint(2, 30)
            x = [rng.randint(0, 10) * 1.0 for _ in range(n)]
            y = [rng.randint(0, 10) * 1.0 for _ in range(n)]
            assert spearman(x, y) == spearman(y, x)
            if len(set(x)) > 1:
                shifted = [3.5 + 2.0 * v for v in x]
                assert spearman(x, shifted) == pytest.approx(1.0, abs=1e-12)

    def test_matches_oracle_on_random_vectors_with_ties(self):
        rng = random.Random(99)
        for _ in range(300):
            n = rng.randint(2, 50)
            x = [float(rng.randint(0, 8)) for _ in range(n)]
            y = [float(rng.randint(0, 8)) for _ in range(n)]
            expected = oracle_spearman(x, y)
            actual = spearman(x, y)
            if expected is None:
                assert actual is None
            else:
                assert actual == pytest.approx(expected, abs=1e-12)


class TestIqrOutliers:
    def test_worked_example(self):
        values = list(range(1, 11)) + [100]
        report = iqr_outliers([float(v) for v in values], 1.5)
        # Under the (n-1)*q interpolation scheme: Q1=3.5, Q3=8.5, IQR=5.
        assert report.q1 == pytest.approx(oracle_quantile(values, 0.25), abs=0)
        assert report.q1 == 3.5
        assert report.q3 == 8.5
        assert report.iqr == 5.0
        assert report.outlier_indices == [10]
        assert report.fraction == pytest.approx(1 / 11)

    def test_all_equal_has_no_outliers(self):
        report = iqr_outliers([2.0] * 8, 1.5)
        assert report.iqr == 0.0
        assert report.outlier_indices == []

    def test_factor_three_flags_subset_of_one_point_five(self):
        rng = random.Random(21)
        for _ in range(100):
            values = [rng.gauss(0, 1) for _ in range(rng.randint(4, 60))]
            wide = set(iqr_outliers(values, 3.0).outlier_indices)
            narrow = set(iqr_outliers(values, 1.5).outlier_indices)
            assert wide <= narrow

    def test_matches_oracle_exactly(self):
        rng = random.Random(13)
        for _ in range(300):
            n = rng.randint(4, 200)
            values = [round(rng.uniform(-50, 50), 2) for _ in range(n)]
            report = iqr_outliers(values, 1.5)
            q1 = oracle_quantile(values, 0.25)
            q3 = oracle_quantile(values, 0.75)
            lo, hi = q1 - 1.5 * (q3 - q1), q3 + 1.5 * (q3 - q1)
            expected = [i for i, v in enumerate(values) if v < lo or v > hi]
            assert report.outlier_indices == expected

    def test_too_short_raises(self):
        with pytest.raises(SeriesTooShortError):
            iqr_outliers([1.0, 2.0, 3.0], 1.5)

    def test_bad_factor_raises(self):
        with pytest.raises(ValueError):
            iqr_outliers([1.0, 2.0, 3.0, 4.0], 0.0)


class TestClassifyCorrelation:
    @pytest.mark.parametrize(
        "rho,expected",
        [
            (0.0, "none"), (0.05, "none"), (-0.85, "strong"), (1.0, "perfect"),
            (-1.0, "perfect"), (0.1, "weak"), (0.39, "weak"), (0.4, "moderate"),
            (0.69, "moderate"), (0.7, "strong"), (0.99, "strong"),
        ],
    )
    def test_categories(self, rho, expected):
        assert classify_correlation(rho) == expected

    def test_out_of_range_raises(self):
        with pytest.raises(ValueError):
            classify_correlation(1.5)

    def test_weakly_monotone_in_magnitude(self):
        order = ["none", "weak", "moderate", "strong", "perfect"]
        previous = 0
        for step in range(0, 101):
            category = classify_correlation(step / 100.0)
            assert order.index(category) >= previous
            previous = order.index(category)


class TestMatrices:
    def test_co_monotone_series_gives_all_ones(self):
        columns = {m: [1.0 + i for i in range(5)] for m in ALL_METRICS}
        series = make_series(columns)
        matrix = entropy_correlation_matrix(series)
        for row in matrix.rho:
            for cell in row:
                assert cell == pytest.approx(1.0)

    def test_unit_diagonal(self, calibration_series):
        matrix = entropy_correlation_matrix(calibration_series)
        for i in range(len(matrix.row_labels)):
            assert matrix.rho[i][i] == pytest.approx(1.0)

    def test_too_short_raises(self):
        series = make_series({m: [1.0] for m in ALL_METRICS})
        with pytest.raises(SeriesTooShortError):
            entropy_correlation_matrix(series)

    def test_constant_classic_column_is_undefined(self):
        columns = {m: [float(i) for i in range(4)] for m in ALL_METRICS}
        series = make_series(columns, modified_lines=[7, 7, 7, 7])
        matrix = classic_correlation_matrix(series)
        col = matrix.col_labels.index("mod_lines")
        assert all(row[col] is None for row in matrix.rho)

    def test_classic_shape(self, calibration_series):
        matrix = classic_correlation_matrix(calibration_series)
        assert len(matrix.rho) == 4
        assert all(len(row) == 3 for row in matrix.rho)


class TestPerFileSeries:
    def test_single_commit(self):
        series = make_series({"struct": [1.5]}, live_files=[1])
        assert per_file_series(series) == [1.5]

    def test_adding_identical_file_keeps_value(self):
        series = make_series({"struct": [1.5, 1.5]}, live_files=[1, 2])
        assert per_file_series(series) == [1.5, 1.5]

    def test_zero_live_files_flagged_as_zero(self):
        series = make_series({"struct": [0.0]}, live_files=[0])
        assert per_file_series(series) == [0.0]


class TestCalibrate:
    def test_monotone_labels(self):
        # Distinct positive deltas against tied +1 labels: rho is high but
        # below exactly 1 because of the label ties.
        deltas = [-2.0, 0.0, 0.0, 1.0, 2.0, 3.0]
        labels = [-1, 0, 0, 1, 1, 1]
        series = make_series({m: deltas for m in ALL_METRICS})
        result = calibrate(series, labels)
        for metric in ALL_METRICS:
            assert 0.9 <= result.rho[metric] < 1.0
            assert result.sign_mismatches[metric] == 0

    def test_rank_identical_labels_give_exactly_one(self):
        deltas = [-2.0, 0.0, 0.0, 2.0, 2.0, 2.0]
        labels = [-1, 0, 0, 1, 1, 1]
        series = make_series({m: deltas for m in ALL_METRICS})
        result = calibrate(series, labels)
        for metric in ALL_METRICS:
            assert result.rho[metric] == pytest.approx(1.0)

    def test_negated_labels_flip_sign(self):
        deltas = [-2.0, 0.0, 1.0, 2.0]
        series = make_series({m: deltas for m in ALL_METRICS})
        plus = calibrate(series, [-1, 0, 1, 1])
        minus = calibrate(series, [1, 0, -1, -1])
        for metric in ALL_METRICS:
            assert plus.rho[metric] == pytest.approx(-minus.rho[metric])

    def test_length_mismatch_raises(self):
        series = make_series({m: [1.0, 2.0] for m in ALL_METRICS})
        with pytest.raises(ValueError):
            calibrate(series, [1])


class TestQuantile:
    def test_median_of_even_length(self):
        assert quantile([1.0, 2.0, 3.0, 4.0], 0.5) == 2.5

    def test_endpoints(self):
        values = [5.0, 1.0, 3.0]
        assert quantile(values, 0.0) == 1.0
        assert quantile(values, 1.0) == 5.0
