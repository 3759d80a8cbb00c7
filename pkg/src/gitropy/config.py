"""Analysis configuration and its measurement fingerprint."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .tokens import DEFAULT_STOPLIST

# Bump whenever measurement semantics change; part of every cache key.
FORMAT_VERSION = 1

DEFAULT_MAX_FILE_BYTES = 10 * 1024 * 1024

DEFAULT_LANGUAGES: dict[str, str] = {".java": "java"}


@dataclass(frozen=True)
class RunConfig:
    """Everything that affects what gets measured and how."""

    extensions: tuple[str, ...] = (".java",)
    stoplist: frozenset[str] = DEFAULT_STOPLIST
    include_comments: bool = True
    merge_policy: str = "first-parent"  # "first-parent" | "skip"
    max_file_bytes: int = DEFAULT_MAX_FILE_BYTES
    languages: tuple[tuple[str, str], ...] = ((".java", "java"),)

    def matches(self, path: str) -> bool:
        return any(path.endswith(ext) for ext in self.extensions)

    def language_for(self, path: str) -> str | None:
        for ext, language in self.languages:
            if path.endswith(ext):
                return language
        return None

    @property
    def fingerprint(self) -> str:
        """Stable digest of every field that affects per-blob measurement."""
        payload = {
            "format": FORMAT_VERSION,
            "extensions": sorted(self.extensions),
            "stoplist": sorted(self.stoplist),
            "include_comments": self.include_comments,
            "max_file_bytes": self.max_file_bytes,
            "languages": sorted(self.languages),
            "cc_variant": "extended",
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]

    def echo(self) -> dict:
        """JSON-friendly dump for summary output."""
        return {
            "extensions": list(self.extensions),
            "stoplist_size": len(self.stoplist),
            "include_comments": self.include_comments,
            "merge_policy": self.merge_policy,
            "max_file_bytes": self.max_file_bytes,
            "cc_variant": "extended",
            "fingerprint": self.fingerprint,
        }
