"""Content-addressed on-disk cache for per-blob measurables.

One JSON file per entry, named ``<content_hash>-<config_fingerprint>``, so a
config change can never serve stale data.  Entries are written atomically
(temp file + rename); anything unreadable or from another format version is
treated as a miss and recomputed.
"""

from __future__ import annotations

import json
import os
import tempfile

from .config import FORMAT_VERSION
from .histogram import SymbolHistogram
from .measure import FileSnapshot
from .tokens import TokenizationMode


class BlobCache:
    def __init__(self, root: str):
        self.root = root
        os.makedirs(root, exist_ok=True)

    def _entry_path(self, content_hash: str, fingerprint: str) -> str:
        return os.path.join(self.root, f"{content_hash}-{fingerprint}")

    def get(
        self, content_hash: str, fingerprint: str, language: str | None = "java"
    ) -> FileSnapshot | None:
        path = self._entry_path(content_hash, fingerprint)
        try:
            with open(path, encoding="utf-8") as handle:
                payload = json.load(handle)
        except (OSError, ValueError):
            return None
        try:
            if payload["format"] != FORMAT_VERSION:
                return None
            if payload.get("language") != language:
                return None
            return FileSnapshot(
                path="",
                content_hash=payload["content_hash"],
                edge_hist=SymbolHistogram(payload["edges"]),
                token_hists={
                    mode: SymbolHistogram(payload["tokens"][mode.value])
                    for mode in TokenizationMode
                },
                loc=int(payload["loc"]),
                token_count=int(payload["token_count"]),
                cc=int(payload["cc"]),
                parse_ok=bool(payload["parse_ok"]),
            )
        except (KeyError, TypeError, ValueError):
            return None

    def put(
        self, snapshot: FileSnapshot, fingerprint: str, language: str | None = "java"
    ) -> None:
        payload = {
            "format": FORMAT_VERSION,
            "language": language,
            "content_hash": snapshot.content_hash,
            "loc": snapshot.loc,
            "token_count": snapshot.token_count,
            "cc": snapshot.cc,
            "parse_ok": snapshot.parse_ok,
            "edges": snapshot.edge_hist.to_dict(),
            "tokens": {
                mode.value: hist.to_dict()
                for mode, hist in snapshot.token_hists.items()
            },
        }
        path = self._entry_path(snapshot.content_hash, fingerprint)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                json.dump(payload, handle, separators=(",", ":"))
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
