from __future__ import annotations

import os
import subprocess

import pytest

from gitropy.fixture import generate_calibration_fixture
from gitropy.gitio import git_env
from gitropy.history import walk_history

_EPOCH = 1700000000


@pytest.fixture(scope="session")
def calibration(tmp_path_factory):
    """The labeled calculator fixture, generated once per session."""
    out = tmp_path_factory.mktemp("calibration")
    return generate_calibration_fixture(str(out))


@pytest.fixture(scope="session")
def calibration_series(calibration):
    return walk_history(calibration.repo_path)


class RepoBuilder:
    """Builds tiny deterministic repositories for walk tests."""

    def __init__(self, path: str):
        self.path = path
        self._seq = 0
        os.makedirs(path, exist_ok=True)
        self._git("init", "-q", "-b", "main", ".")

    def _git(self, *args: str) -> str:
        env = git_env()
        stamp = f"{_EPOCH + self._seq * 60} +0000"
        env.update(
            GIT_AUTHOR_NAME="Test", GIT_AUTHOR_EMAIL="test@example.invalid",
            GIT_COMMITTER_NAME="Test", GIT_COMMITTER_EMAIL="test@example.invalid",
            GIT_AUTHOR_DATE=stamp, GIT_COMMITTER_DATE=stamp,
        )
        proc = subprocess.run(
            ["git", "-C", self.path, *args],
            capture_output=True, text=True, env=env,
        )
        if proc.returncode != 0:
            raise RuntimeError(f"git {args} failed: {proc.stderr}")
        return proc.stdout.strip()

    def commit(self, message: str, files: dict[str, str | None]) -> str:
        """Write/delete the given files and commit; returns the hash."""
        self._seq += 1
        for rel, content in files.items():
            full = os.path.join(self.path, rel)
            if content is None:
                os.unlink(full)
            else:
                os.makedirs(os.path.dirname(full) or self.path, exist_ok=True)
                with open(full, "w", encoding="utf-8") as handle:
                    handle.write(content)
        self._git("add", "-A")
        self._git("commit", "-q", "--allow-empty", "-m", message)
        return self._git("rev-parse", "HEAD")

    def rename(self, message: str, old: str, new: str) -> str:
        self._seq += 1
        self._git("mv", old, new)
        self._git("commit", "-q", "-m", message)
        return self._git("rev-parse", "HEAD")

    def git(self, *args: str) -> str:
        return self._git(*args)


@pytest.fixture
def repo_builder(tmp_path):
    def make(name: str = "repo") -> RepoBuilder:
        return RepoBuilder(str(tmp_path / name))

    return make
