"""Word extraction from source text and the three tokenization modes.

Tokenization is purely textual: it works on raw file content and needs no
valid syntax, so unparseable files still receive textual metrics.
"""

from __future__ import annotations

import enum
import re
from typing import Iterable, Sequence

from .histogram import SymbolHistogram


class TokenizationMode(enum.Enum):
    """Progressive filtering of the extracted word stream."""

    FULL = "tok_full"
    NO_KEYWORDS = "tok_nokw"
    NO_KEYWORDS_NO_NUMBERS = "tok_nokwnum"


# All Java reserved words, the literal words true/false/null, and "string",
# which the default word filter drops alongside the keywords.
DEFAULT_STOPLIST: frozenset[str] = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package
    private protected public return short static strictfp super switch
    synchronized this throw throws transient try void volatile while
    true false null string
    """.split()
)

_WORD_RUN = re.compile(r"\w+", re.UNICODE)


def load_stoplist(path: str) -> frozenset[str]:
    """Read a stoplist file: one word per line, '#' comments allowed."""
    words: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            word = line.split("#", 1)[0].strip()
            if word:
                words.add(word.lower())
    return frozenset(words)


def _split_run(run: str) -> list[str]:
    """Split one alphanumeric run at camel-case and letter/digit boundaries."""
    pieces: list[str] = []
    start = 0
    for i in range(1, len(run)):
        prev, ch = run[i - 1], run[i]
        if prev.isdigit() != ch.isdigit():
            boundary = True
        elif prev.islower() and ch.isupper():
            boundary = True
        elif (
            prev.isupper()
            and ch.isupper()
            and i + 1 < len(run)
            and run[i + 1].islower()
        ):
            # Last capital of an uppercase run followed by lowercase:
            # "XMLHttp" splits into "XML" + "Http".
            boundary = True
        else:
            boundary = False
        if boundary:
            pieces.append(run[start:i])
            start = i
    pieces.append(run[start:])
    return pieces


def extract_words(text: str) -> list[str]:
    """Extract lowercase word tokens from source text, in order of appearance.

    Maximal alphanumeric runs are split at underscores, at lower-to-upper
    transitions, at letter/digit boundaries, and at the last capital of an
    uppercase run followed by a lowercase letter.  Punctuation and operators
    are discarded.
    """
    words: list[str] = []
    for match in _WORD_RUN.finditer(text):
        for chunk in match.group(0).split("_"):
            if not chunk:
                continue
            for piece in _split_run(chunk):
                words.append(piece.lower())
    return words


def apply_mode(
    tokens: Sequence[str],
    mode: TokenizationMode,
    stoplist: frozenset[str] = DEFAULT_STOPLIST,
) -> list[str]:
    """Filter an already-lowercased token list according to ``mode``."""
    if mode is TokenizationMode.FULL:
        return list(tokens)
    survivors = [t for t in tokens if t not in stoplist]
    if mode is TokenizationMode.NO_KEYWORDS:
        return survivors
    return [t for t in survivors if not t.isdigit()]


def token_histogram(tokens: Iterable[str]) -> SymbolHistogram:
    return SymbolHistogram.from_symbols(tokens)
