"""Per-file measurement: one source blob in, one snapshot of measurables out."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .config import RunConfig
from .histogram import SymbolHistogram, entropy, normalized_entropy
from .java import strip_comments
from .tokens import TokenizationMode, apply_mode, extract_words, token_histogram
from .tree import (
    UnsupportedLanguageError,
    cyclomatic_complexity,
    edge_histogram,
    line_count,
    parse_source,
)

RAW_METRICS = ("struct", "tok_full", "tok_nokw", "tok_nokwnum")
ALL_METRICS = RAW_METRICS + tuple(f"{m}_norm" for m in RAW_METRICS)

_MODE_FOR_METRIC = {
    "tok_full": TokenizationMode.FULL,
    "tok_nokw": TokenizationMode.NO_KEYWORDS,
    "tok_nokwnum": TokenizationMode.NO_KEYWORDS_NO_NUMBERS,
}


@dataclass
class FileSnapshot:
    """Everything measured about one file version."""

    path: str
    content_hash: str
    edge_hist: SymbolHistogram
    token_hists: dict[TokenizationMode, SymbolHistogram]
    loc: int
    token_count: int
    cc: int
    parse_ok: bool
    _values: dict[str, float] | None = field(default=None, repr=False, compare=False)

    def metric_values(self) -> dict[str, float]:
        """The eight per-file entropy values (raw and normalized, in bits)."""
        if self._values is None:
            values: dict[str, float] = {}
            values["struct"] = entropy(self.edge_hist)
            values["struct_norm"] = normalized_entropy(self.edge_hist)
            for metric, mode in _MODE_FOR_METRIC.items():
                hist = self.token_hists[mode]
                values[metric] = entropy(hist)
                values[f"{metric}_norm"] = normalized_entropy(hist)
            self._values = values
        return self._values


def blob_id(content: bytes) -> str:
    """Git-style content hash of a blob (sha1 over the object header + body)."""
    digest = hashlib.sha1()
    digest.update(b"blob %d\0" % len(content))
    digest.update(content)
    return digest.hexdigest()


def measure_file(
    content: bytes | str,
    config: RunConfig,
    path: str = "",
    content_hash: str | None = None,
) -> FileSnapshot:
    """Measure one file version: histograms, LOC, token count, complexity.

    Parse failures (and unsupported languages) are encoded in the snapshot:
    the edge histogram stays empty and complexity is 0, while textual metrics
    are still computed from the raw text.
    """
    if isinstance(content, str):
        raw = content.encode("utf-8")
        text = content
    else:
        raw = content
        text = content.decode("utf-8", errors="replace")
    if content_hash is None:
        content_hash = blob_id(raw)
    language = config.language_for(path) if path else "java"
    return _measure_text(text, config, path, content_hash, language)


def _measure_text(
    text: str,
    config: RunConfig,
    path: str,
    content_hash: str,
    language: str | None,
) -> FileSnapshot:
    token_text = text if config.include_comments else strip_comments(text)
    words = extract_words(token_text)
    token_hists = {
        mode: token_histogram(apply_mode(words, mode, config.stoplist))
        for mode in TokenizationMode
    }
    parse_ok = False
    edges = SymbolHistogram()
    cc = 0
    if language is not None:
        try:
            outcome = parse_source(text, language)
        except UnsupportedLanguageError:
            outcome = None
        if outcome is not None and outcome.ok:
            parse_ok = True
            edges = edge_histogram(outcome.tree)
            cc = cyclomatic_complexity(outcome.tree)

    return FileSnapshot(
        path=path,
        content_hash=content_hash,
        edge_hist=edges,
        token_hists=token_hists,
        loc=line_count(text),
        token_count=token_hists[TokenizationMode.FULL].total,
        cc=cc,
        parse_ok=parse_ok,
    )
