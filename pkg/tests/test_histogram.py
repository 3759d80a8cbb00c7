from __future__ import annotations

import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gitropy.histogram import (
    ContextCoverageError,
    SymbolHistogram,
    entropy,
    entropy_value,
    entropy_vs_context,
    l1_distance,
    merge,
    normalized_entropy,
)

hist_dicts = st.dictionaries(
    st.text(min_size=1, max_size=4), st.integers(min_value=1, max_value=9),
    max_size=8,
)


def H(counts) -> SymbolHistogram:
    return SymbolHistogram(counts)


class TestEntropy:
    def test_uniform_is_exactly_log2_n(self):
        for n in (2, 4, 8, 16):
            for count in (1, 3):
                hist = H({f"s{i}": count for i in range(n)})
                assert entropy(hist) == float(math.log2(n))

    def test_degenerate_and_empty_are_zero(self):
        assert entropy(H({"a": 5})) == 0.0
        assert entropy(H({})) == 0.0

    def test_skewed_closed_form(self):
        assert entropy(H({"a": 2, "b": 1, "c": 1})) == 1.5

    def test_relabeling_invariance(self):
        rng = random.Random(42)
        for _ in range(1000):
            n = rng.randint(1, 12)
            counts = {f"k{i}": rng.randint(1, 50) for i in range(n)}
            shuffled = list(counts.values())
            rng.shuffle(shuffled)
            renamed = {f"other{i}": c for i, c in enumerate(shuffled)}
            assert entropy(H(counts)) == pytest.approx(
                entropy(H(renamed)), abs=1e-12
            )

    def test_bounds(self):
        rng = random.Random(7)
        for _ in range(300):
            n = rng.randint(1, 10)
            hist = H({f"k{i}": rng.randint(1, 30) for i in range(n)})
            assert 0.0 <= entropy(hist) <= math.log2(max(n, 2)) + 1e-12

    def test_uniform_maximizes_entropy_brute_force(self):
        # All count compositions with support n <= 4 and total <= 8.
        for n in range(2, 5):
            for total in range(n, 9):
                if total % n:
                    continue
                uniform = entropy(H({f"s{i}": total // n for i in range(n)}))
                for combo in itertools.product(range(1, total + 1), repeat=n):
                    if sum(combo) != total:
                        continue
                    value = entropy(H({f"s{i}": c for i, c in enumerate(combo)}))
                    assert value <= uniform + 1e-12


class TestNormalizedEntropy:
    def test_uniform_two_symbols_is_one(self):
        assert normalized_entropy(H({"a": 1, "b": 1})) == 1.0

    def test_degenerate_is_zero(self):
        assert normalized_entropy(H({"a": 7})) == 0.0
        assert normalized_entropy(H({})) == 0.0

    def test_skewed_value(self):
        value = normalized_entropy(H({"a": 2, "b": 1, "c": 1}))
        assert value == pytest.approx(0.946394, abs=1e-6)
        assert value == pytest.approx(0.9463946303571862, abs=1e-12)

    def test_never_exceeds_one(self):
        rng = random.Random(11)
        for _ in range(300):
            n = rng.randint(1, 10)
            hist = H({f"k{i}": rng.randint(1, 30) for i in range(n)})
            assert normalized_entropy(hist) <= 1.0 + 1e-12

    def test_entropy_value_bundle(self):
        bundle = entropy_value(H({"a": 2, "b": 1, "c": 1}))
        assert bundle.bits == 1.5
        assert bundle.normalized == pytest.approx(0.946394, abs=1e-6)


class TestMerge:
    def test_counts_are_summed(self):
        merged = merge([H({"a": 1}), H({"a": 2, "b": 1})])
        assert merged == H({"a": 3, "b": 1})
        assert merged.total == 4

    def test_empty_merge(self):
        assert merge([]) == H({})

    def test_single_part_identity(self):
        h = H({"x": 3, "y": 1})
        assert merge([h]) == h

    @given(st.lists(hist_dicts, max_size=4))
    def test_commutative(self, dicts):
        hists = [H(d) for d in dicts]
        assert merge(hists) == merge(list(reversed(hists)))

    @given(hist_dicts, hist_dicts, hist_dicts)
    def test_associative(self, a, b, c):
        ha, hb, hc = H(a), H(b), H(c)
        assert merge([merge([ha, hb]), hc]) == merge([ha, merge([hb, hc])])


class TestL1Distance:
    def test_identical_is_zero(self):
        assert l1_distance(H({"x": 3}), H({"x": 3})) == 0

    def test_hand_summed_example(self):
        assert l1_distance(H({"x": 2, "y": 1}), H({"x": 1, "z": 1})) == 3

    def test_distance_to_empty_is_total(self):
        assert l1_distance(H({}), H({"w": 4})) == 4

    @given(hist_dicts, hist_dicts, hist_dicts)
    @settings(max_examples=200)
    def test_metric_axioms(self, a, b, c):
        ha, hb, hc = H(a), H(b), H(c)
        assert l1_distance(ha, hb) >= 0
        assert l1_distance(ha, hb) == l1_distance(hb, ha)
        assert (l1_distance(ha, hb) == 0) == (ha == hb)
        assert l1_distance(ha, hc) <= l1_distance(ha, hb) + l1_distance(hb, hc)


class TestEntropyVsContext:
    def test_identical_distributions_are_zero(self):
        h = H({"a": 3, "b": 1})
        assert entropy_vs_context(h, h) == 0.0

    def test_ratio_above_one_clamps_to_zero_term(self):
        assert entropy_vs_context(H({"a": 1}), H({"a": 1, "b": 1})) == 0.0

    def test_mixed_ratios(self):
        value = entropy_vs_context(H({"a": 1, "b": 1}), H({"a": 3, "b": 1}))
        assert value == pytest.approx(0.389975, abs=1e-6)
        assert value == pytest.approx(0.3899750004807708, abs=1e-12)

    def test_symbol_missing_from_context(self):
        with pytest.raises(ContextCoverageError):
            entropy_vs_context(H({"a": 1, "q": 1}), H({"a": 5}))


class TestRunningTotalDrift:
    def test_incremental_total_tracks_recompute(self):
        # Simulates 1000 commits of add/remove events against a live table.
        rng = random.Random(3)
        live: dict[int, float] = {}
        running = 0.0
        next_id = 0
        for _ in range(1000):
            if live and rng.random() < 0.3:
                victim = rng.choice(list(live))
                running -= live.pop(victim)
            else:
                value = entropy(
                    H({f"s{i}": rng.randint(1, 9) for i in range(rng.randint(2, 9))})
                )
                live[next_id] = value
                running += value
                next_id += 1
        assert running == pytest.approx(math.fsum(live.values()), abs=1e-9)


class TestSymbolHistogram:
    def test_zero_counts_are_not_stored(self):
        hist = H({"a": 0, "b": 2})
        assert "a" not in hist
        assert hist.support_size == 1
        assert hist.total == 2

    def test_negative_count_rejected(self):
        with pytest.raises(ValueError):
            H({"a": -1})

    def test_from_symbols_counts(self):
        hist = SymbolHistogram.from_symbols(["x", "y", "x"])
        assert hist == H({"x": 2, "y": 1})
