"""Thin wrapper over the git binary for reading local repositories.

All history access goes through plumbing commands (`rev-list`, `diff-tree`,
`cat-file --batch`, `ls-tree`) with user/system git configuration disabled,
so identical repositories produce identical walks on any machine.
"""

from __future__ import annotations

import os
import subprocess
from dataclasses import dataclass

EMPTY_TREE = "4b825dc642cb6eb9a060e54bf8d69288fbee4904"
NULL_SHA = "0" * 40


class GitError(RuntimeError):
    """A git invocation failed."""


class RepositoryError(GitError):
    """The given path is not a readable git repository."""


class EmptyRepositoryError(RepositoryError):
    """The repository has no commits on its default branch."""


def git_env() -> dict[str, str]:
    env = os.environ.copy()
    env["GIT_CONFIG_GLOBAL"] = os.devnull
    env["GIT_CONFIG_SYSTEM"] = os.devnull
    env["GIT_CONFIG_NOSYSTEM"] = "1"
    env["LC_ALL"] = "C"
    env.pop("GIT_DIR", None)
    env.pop("GIT_WORK_TREE", None)
    env.pop("GIT_INDEX_FILE", None)
    return env


@dataclass(frozen=True)
class DiffEntry:
    """One changed path between two trees (rename-aware)."""

    status: str  # A/M/D/R/C/T/...
    old_mode: str
    new_mode: str
    old_sha: str
    new_sha: str
    old_path: str
    new_path: str

    @property
    def old_is_blob(self) -> bool:
        return self.old_mode.startswith("100")

    @property
    def new_is_blob(self) -> bool:
        return self.new_mode.startswith("100")


@dataclass(frozen=True)
class TreeEntry:
    mode: str
    sha: str
    path: str


@dataclass
class CommitDiff:
    """One commit with its first-parent diff and per-file line counts."""

    hash: str
    timestamp: int
    first_parent: str | None
    entries: list[DiffEntry]
    numstat: list[tuple[int, int, str, str]]


class GitRepo:
    """Read-only access to one local repository."""

    def __init__(self, path: str):
        self.path = os.path.abspath(path)
        self._env = git_env()
        self._batch: subprocess.Popen | None = None
        if not os.path.isdir(self.path):
            raise RepositoryError(f"not a directory: {self.path}")
        try:
            self._run("rev-parse", "--git-dir")
        except GitError as exc:
            raise RepositoryError(
                f"not a git repository: {self.path}"
            ) from exc

    def _run(self, *args: str) -> bytes:
        proc = subprocess.run(
            ["git", "-C", self.path, *args],
            capture_output=True,
            env=self._env,
        )
        if proc.returncode != 0:
            message = proc.stderr.decode("utf-8", "replace").strip()
            raise GitError(f"git {args[0]} failed: {message}")
        return proc.stdout

    # -- history ------------------------------------------------------------

    def stream_history(self, skip_merges: bool = False) -> list[CommitDiff]:
        """Whole first-parent history with diffs, from a single git call.

        One `git log --raw --numstat` invocation replaces two `diff-tree`
        calls per commit, which dominates runtime once blob measurement is
        cached.
        """
        args = [
            "log", "--first-parent", "--topo-order", "--reverse",
            "-M", "--no-abbrev", "--raw", "--numstat", "-z",
            "--format=%x01%H%x01%ct%x01%P",
        ]
        if skip_merges:
            args.append("--no-merges")
        args.append("HEAD")
        try:
            out = self._run(*args)
        except GitError as exc:
            raise EmptyRepositoryError(
                f"repository has no commits: {self.path}"
            ) from exc
        commits = _parse_log_stream(out)
        if not commits:
            raise EmptyRepositoryError(f"repository has no commits: {self.path}")
        return commits

    # -- diffs ---------------------------------------------------------------

    def diff_entries(self, old_tree: str, new_tree: str) -> list[DiffEntry]:
        out = self._run("diff-tree", "-r", "-M", "-z", old_tree, new_tree)
        fields = out.split(b"\0")
        entries: list[DiffEntry] = []
        i = 0
        while i < len(fields) and fields[i]:
            meta = fields[i].decode("utf-8", "replace")
            if not meta.startswith(":"):
                break
            old_mode, new_mode, old_sha, new_sha, status = meta[1:].split(" ")
            path1 = fields[i + 1].decode("utf-8", "replace")
            if status[0] in ("R", "C"):
                path2 = fields[i + 2].decode("utf-8", "replace")
                i += 3
                old_path, new_path = path1, path2
            else:
                i += 2
                old_path = new_path = path1
            entries.append(
                DiffEntry(
                    status[0], old_mode, new_mode, old_sha, new_sha,
                    old_path, new_path,
                )
            )
        return entries

    # -- objects ---------------------------------------------------------------

    def _batch_proc(self) -> subprocess.Popen:
        if self._batch is None or self._batch.poll() is not None:
            self._batch = subprocess.Popen(
                ["git", "-C", self.path, "cat-file", "--batch"],
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                env=self._env,
            )
        return self._batch

    def read_blob(self, sha: str) -> bytes:
        """Blob content by hash; raises GitError when the object is missing."""
        proc = self._batch_proc()
        proc.stdin.write(sha.encode("ascii") + b"\n")
        proc.stdin.flush()
        line = proc.stdout.readline().decode("ascii").strip()
        if line.endswith("missing"):
            raise GitError(f"missing object {sha}")
        size = int(line.rsplit(" ", 1)[1])
        data = proc.stdout.read(size)
        proc.stdout.read(1)  # trailing newline
        return data

    def ls_tree(self, tree: str) -> list[TreeEntry]:
        out = self._run("ls-tree", "-r", "-z", tree)
        entries: list[TreeEntry] = []
        for record in out.split(b"\0"):
            if not record:
                continue
            meta, path = record.split(b"\t", 1)
            mode, _, sha = meta.decode("ascii").split(" ")
            entries.append(TreeEntry(mode, sha, path.decode("utf-8", "replace")))
        return entries

    def rev_parse(self, ref: str = "HEAD") -> str:
        return self._run("rev-parse", ref).decode("ascii").strip()

    def close(self) -> None:
        if self._batch is not None and self._batch.poll() is None:
            self._batch.stdin.close()
            self._batch.wait(timeout=10)
        self._batch = None

    def __enter__(self) -> "GitRepo":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def _parse_log_stream(out: bytes) -> list[CommitDiff]:
    """Parse `git log -z --format=%x01H... --raw --numstat` output."""
    commits: list[CommitDiff] = []
    fields = out.split(b"\0")
    current: CommitDiff | None = None
    i = 0
    while i < len(fields):
        chunk = fields[i]
        if chunk.startswith(b"\x01"):
            _, sha, timestamp, parents = chunk.decode(
                "utf-8", "replace"
            ).split("\x01")
            parent_list = parents.split()
            current = CommitDiff(
                hash=sha,
                timestamp=int(timestamp),
                first_parent=parent_list[0] if parent_list else None,
                entries=[],
                numstat=[],
            )
            commits.append(current)
            i += 1
            continue
        if chunk.startswith(b"\n"):
            chunk = chunk[1:]
        if not chunk:
            i += 1
            continue
        if current is None:
            raise GitError("malformed git log stream: record before any commit")
        if chunk.startswith(b":"):
            meta = chunk.decode("utf-8", "replace")
            old_mode, new_mode, old_sha, new_sha, status = meta[1:].split(" ")
            path1 = fields[i + 1].decode("utf-8", "replace")
            if status[0] in ("R", "C"):
                path2 = fields[i + 2].decode("utf-8", "replace")
                i += 3
                old_path, new_path = path1, path2
            else:
                i += 2
                old_path = new_path = path1
            current.entries.append(
                DiffEntry(
                    status[0], old_mode, new_mode, old_sha, new_sha,
                    old_path, new_path,
                )
            )
            continue
        head = chunk.decode("utf-8", "replace")
        added_s, deleted_s, path = head.split("\t", 2)
        added = 0 if added_s == "-" else int(added_s)
        deleted = 0 if deleted_s == "-" else int(deleted_s)
        if path:
            current.numstat.append((added, deleted, path, path))
            i += 1
        else:
            old_path = fields[i + 1].decode("utf-8", "replace")
            new_path = fields[i + 2].decode("utf-8", "replace")
            current.numstat.append((added, deleted, old_path, new_path))
            i += 3
    return commits
