"""Chronological replay of a repository's first-parent history.

Each visited commit is diffed against its first parent (the empty tree for
the root commit); per-file measurement deltas are summed into per-commit
deltas and running cumulative totals.  Because the project metric is a plain
sum of per-file entropies, the cumulative value at any commit telescopes to
the sum over the live tree at that commit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cache import BlobCache
from .config import RunConfig
from .gitio import NULL_SHA, GitRepo
from .histogram import EMPTY_HISTOGRAM, l1_distance
from .measure import ALL_METRICS, FileSnapshot, measure_file
from .tokens import TokenizationMode

_MISS = object()


@dataclass
class CommitRecord:
    """Per-commit deltas plus the running totals after this commit."""

    commit_hash: str
    sequence_index: int
    timestamp: int
    files_changed: int
    parse_failures: int
    live_files: int
    delta: dict[str, float]
    cumulative: dict[str, float]
    modified_lines: int
    modified_tokens: int
    cc_after_sum: int
    cc_delta: int
    skipped_files: int = 0


@dataclass
class AnalysisSeries:
    """Chronologically ordered commit records for one repository."""

    repo_id: str
    config_fingerprint: str
    records: list[CommitRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def deltas(self, metric: str) -> list[float]:
        return [r.delta[metric] for r in self.records]

    def cumulatives(self, metric: str) -> list[float]:
        return [r.cumulative[metric] for r in self.records]

    def ints(self, name: str) -> list[int]:
        return [getattr(r, name) for r in self.records]


class _BlobMeasurer:
    """Measures blobs with in-memory memoization and an optional disk cache."""

    def __init__(self, repo: GitRepo, config: RunConfig, cache_dir: str | None):
        self.repo = repo
        self.config = config
        self.cache = BlobCache(cache_dir) if cache_dir else None
        self.fingerprint = config.fingerprint
        self._memo: dict[tuple[str, str | None], FileSnapshot | None] = {}

    def measure(self, sha: str, path: str) -> FileSnapshot | None:
        """Snapshot for a blob, or None when it exceeds the size limit."""
        language = self.config.language_for(path)
        key = (sha, language)
        hit = self._memo.get(key, _MISS)
        if hit is not _MISS:
            return hit
        if self.cache is not None:
            snapshot = self.cache.get(sha, self.fingerprint, language)
            if snapshot is not None:
                self._memo[key] = snapshot
                return snapshot
        content = self.repo.read_blob(sha)
        if len(content) > self.config.max_file_bytes:
            self._memo[key] = None
            return None
        snapshot = measure_file(content, self.config, path=path, content_hash=sha)
        self._memo[key] = snapshot
        if self.cache is not None:
            self.cache.put(snapshot, self.fingerprint, language)
        return snapshot


def commit_delta(
    pairs: list[tuple[FileSnapshot | None, FileSnapshot | None]],
) -> tuple[dict[str, float], int, int, int]:
    """Aggregate per-file before/after snapshot pairs into commit metrics.

    Returns (metric deltas, modified_tokens, cc_after_sum, cc_delta); an
    absent side contributes zero everywhere.
    """
    terms: dict[str, list[float]] = {m: [] for m in ALL_METRICS}
    modified_tokens = 0
    cc_after_sum = 0
    cc_delta = 0
    for before, after in pairs:
        before_values = before.metric_values() if before else None
        after_values = after.metric_values() if after else None
        for metric in ALL_METRICS:
            b = before_values[metric] if before_values else 0.0
            a = after_values[metric] if after_values else 0.0
            terms[metric].append(a - b)
        before_full = (
            before.token_hists[TokenizationMode.FULL] if before else EMPTY_HISTOGRAM
        )
        after_full = (
            after.token_hists[TokenizationMode.FULL] if after else EMPTY_HISTOGRAM
        )
        modified_tokens += l1_distance(before_full, after_full)
        cc_after_sum += after.cc if after else 0
        cc_delta += (after.cc if after else 0) - (before.cc if before else 0)
    deltas = {m: math.fsum(terms[m]) for m in ALL_METRICS}
    return deltas, modified_tokens, cc_after_sum, cc_delta


def walk_history(
    repo_path: str,
    config: RunConfig | None = None,
    cache_dir: str | None = None,
) -> AnalysisSeries:
    """Replay the default branch's first-parent history into a series.

    Per-commit measurement problems (syntax errors, oversized files) are
    recorded in the commit records and never abort the walk.
    """
    config = config or RunConfig()
    with GitRepo(repo_path) as repo:
        commits = repo.stream_history(skip_merges=config.merge_policy == "skip")
        measurer = _BlobMeasurer(repo, config, cache_dir)
        series = AnalysisSeries(
            repo_id=repo.path, config_fingerprint=config.fingerprint
        )
        live_parse_ok: dict[str, bool] = {}
        failing_live = 0
        cumulative = {m: 0.0 for m in ALL_METRICS}

        for seq, meta in enumerate(commits):
            pairs: list[tuple[FileSnapshot | None, FileSnapshot | None]] = []
            files_changed = 0
            skipped = 0
            removals: list[str] = []
            additions: list[tuple[str, bool]] = []
            for entry in meta.entries:
                old_live = (
                    entry.old_is_blob
                    and entry.old_sha != NULL_SHA
                    and config.matches(entry.old_path)
                )
                new_live = (
                    entry.new_is_blob
                    and entry.new_sha != NULL_SHA
                    and config.matches(entry.new_path)
                )
                if not old_live and not new_live:
                    continue
                files_changed += 1
                before = (
                    measurer.measure(entry.old_sha, entry.old_path)
                    if old_live
                    else None
                )
                after = (
                    measurer.measure(entry.new_sha, entry.new_path)
                    if new_live
                    else None
                )
                if (old_live and before is None) or (new_live and after is None):
                    skipped += 1
                pairs.append((before, after))
                if old_live:
                    removals.append(entry.old_path)
                if new_live and after is not None:
                    additions.append((entry.new_path, after.parse_ok))

            # Removals before additions: a rename away from a path and a new
            # file at that same path may arrive in either order within one
            # commit, and interleaving would drop the surviving entry.
            for path in removals:
                was_ok = live_parse_ok.pop(path, None)
                if was_ok is False:
                    failing_live -= 1
            for path, parse_ok in additions:
                was_ok = live_parse_ok.pop(path, None)
                if was_ok is False:
                    failing_live -= 1
                live_parse_ok[path] = parse_ok
                if not parse_ok:
                    failing_live += 1

            deltas, modified_tokens, cc_after_sum, cc_delta = commit_delta(pairs)
            modified_lines = 0
            for added, deleted, old_path, new_path in meta.numstat:
                if config.matches(old_path) or config.matches(new_path):
                    modified_lines += added + deleted
            for metric in ALL_METRICS:
                cumulative[metric] += deltas[metric]
            series.records.append(
                CommitRecord(
                    commit_hash=meta.hash,
                    sequence_index=seq,
                    timestamp=meta.timestamp,
                    files_changed=files_changed,
                    parse_failures=failing_live,
                    live_files=len(live_parse_ok),
                    delta=dict(deltas),
                    cumulative=dict(cumulative),
                    modified_lines=modified_lines,
                    modified_tokens=modified_tokens,
                    cc_after_sum=cc_after_sum,
                    cc_delta=cc_delta,
                    skipped_files=skipped,
                )
            )
        return series


def compute_tree_totals(
    repo_path: str, config: RunConfig | None = None, ref: str = "HEAD"
) -> tuple[dict[str, float], int, int]:
    """Measure a tree from scratch: (metric totals, live files, parse failures).

    Independent of the incremental walk; used to check that cumulative totals
    telescope to the final tree.
    """
    config = config or RunConfig()
    with GitRepo(repo_path) as repo:
        terms: dict[str, list[float]] = {m: [] for m in ALL_METRICS}
        live = 0
        failures = 0
        for entry in repo.ls_tree(ref):
            if not entry.mode.startswith("100") or not config.matches(entry.path):
                continue
            content = repo.read_blob(entry.sha)
            if len(content) > config.max_file_bytes:
                continue
            snapshot = measure_file(
                content, config, path=entry.path, content_hash=entry.sha
            )
            live += 1
            if not snapshot.parse_ok:
                failures += 1
            for metric, value in snapshot.metric_values().items():
                terms[metric].append(value)
        return {m: math.fsum(terms[m]) for m in ALL_METRICS}, live, failures
