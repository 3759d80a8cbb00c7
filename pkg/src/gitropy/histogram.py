"""Symbol histograms and the entropy math defined over them.

A :class:`SymbolHistogram` is a multiset of opaque text labels with strictly
positive counts.  The same carrier is used for AST-edge distributions and for
word-token distributions; all entropy values are base-2 (bits).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


class ContextCoverageError(ValueError):
    """A file symbol is missing from the context it is scored against."""


class SymbolHistogram:
    """Immutable mapping from symbol label to count, with counts >= 1.

    Zero-count symbols are never stored; ``total`` is the cached sum of all
    counts and ``support_size`` the number of distinct symbols.
    """

    __slots__ = ("_counts", "_total")

    def __init__(self, counts: Mapping[str, int] | None = None) -> None:
        cleaned: dict[str, int] = {}
        if counts:
            for symbol, count in counts.items():
                count = int(count)
                if count < 0:
                    raise ValueError(f"negative count for symbol {symbol!r}")
                if count > 0:
                    cleaned[str(symbol)] = count
        self._counts = cleaned
        self._total = sum(cleaned.values())

    @classmethod
    def from_symbols(cls, symbols: Iterable[str]) -> "SymbolHistogram":
        return cls(Counter(symbols))

    @property
    def total(self) -> int:
        return self._total

    @property
    def support_size(self) -> int:
        return len(self._counts)

    def get(self, symbol: str, default: int = 0) -> int:
        return self._counts.get(symbol, default)

    def items(self) -> Iterator[tuple[str, int]]:
        return iter(self._counts.items())

    def to_dict(self) -> dict[str, int]:
        return dict(self._counts)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._counts

    def __len__(self) -> int:
        return len(self._counts)

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SymbolHistogram):
            return self._counts == other._counts
        return NotImplemented

    def __repr__(self) -> str:
        return f"SymbolHistogram({self._counts!r})"


EMPTY_HISTOGRAM = SymbolHistogram()


@dataclass(frozen=True)
class EntropyValue:
    """Raw base-2 entropy plus its normalized-to-[0,1] companion."""

    bits: float
    normalized: float


def entropy(hist: SymbolHistogram) -> float:
    """Shannon entropy -sum(p * log2 p) of a histogram, in bits.

    Empty and single-symbol histograms carry no distributional information
    and return 0.0.
    """
    total = hist.total
    if total == 0 or hist.support_size < 2:
        return 0.0
    terms = []
    for _, count in hist.items():
        p = count / total
        terms.append(p * math.log2(p))
    return -math.fsum(terms)


def normalized_entropy(hist: SymbolHistogram) -> float:
    """Entropy divided by the maximum for the same support size, in [0, 1]."""
    support = hist.support_size
    if support < 2:
        return 0.0
    return entropy(hist) / math.log2(support)


def entropy_value(hist: SymbolHistogram) -> EntropyValue:
    return EntropyValue(bits=entropy(hist), normalized=normalized_entropy(hist))


def merge(parts: Iterable[SymbolHistogram]) -> SymbolHistogram:
    """Union of histograms: counts are summed per symbol."""
    acc: Counter[str] = Counter()
    for part in parts:
        acc.update(dict(part.items()))
    return SymbolHistogram(acc)


def l1_distance(a: SymbolHistogram, b: SymbolHistogram) -> int:
    """Sum of absolute count differences over the union of supports."""
    dist = 0
    for symbol, count in a.items():
        dist += abs(count - b.get(symbol))
    for symbol, count in b.items():
        if symbol not in a:
            dist += count
    return dist


def entropy_vs_context(
    file_hist: SymbolHistogram, context_hist: SymbolHistogram
) -> float:
    """EXPERIMENTAL cross-context entropy of a file against a wider context.

    Every file symbol must be present in the context (merge the file into the
    context first).  Each term uses the ratio of the file-relative frequency
    to the context-relative frequency, clamped into (0, 1] before the log;
    the unclamped ratio can exceed 1, which would produce negative terms.
    Default pipelines never call this; do not treat its output as comparable
    to :func:`entropy`.
    """
    if not file_hist:
        return 0.0
    file_total = file_hist.total
    context_total = context_hist.total
    terms = []
    for symbol, count in file_hist.items():
        context_count = context_hist.get(symbol)
        if context_count == 0:
            raise ContextCoverageError(
                f"symbol {symbol!r} absent from the context histogram"
            )
        ratio = (count / file_total) / (context_count / context_total)
        q = min(ratio, 1.0)
        terms.append(q * math.log2(q))
    return -math.fsum(terms)
