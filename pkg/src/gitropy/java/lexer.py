"""Lexer for Java source text.

Produces a flat token list for the recursive-descent parser.  Lexing is
fail-fast: any malformed literal or stray character raises
:class:`JavaSyntaxError`, which the measurement layer records as a parse
failure without aborting the enclosing history walk.
"""

from __future__ import annotations


class JavaSyntaxError(ValueError):
    """Raised on any lexical or syntactic error in a Java source file."""

    def __init__(self, message: str, pos: int, text: str | None = None):
        if text is not None:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)
        self.pos = pos


# Reserved words only; true/false/null are literals and contextual keywords
# (var, record, yield, sealed, permits) stay ordinary identifiers.
KEYWORDS = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package
    private protected public return short static strictfp super switch
    synchronized this throw throws transient try void volatile while
    """.split()
)

_OPS4 = frozenset((">>>=",))
_OPS3 = frozenset((">>>", "<<=", ">>=", "..."))
_OPS2 = frozenset(
    (
        "->", "::", "++", "--", "&&", "||", "+=", "-=", "*=", "/=", "%=",
        "&=", "|=", "^=", "==", "!=", "<=", ">=", "<<", ">>",
    )
)
_OPS1 = frozenset("+-*/%&|^!~<>=?:;,.(){}[]@")

_DIGITS = frozenset("0123456789")
_HEX_DIGITS = frozenset("0123456789abcdefABCDEF_")
_FLOAT_SUFFIX = frozenset("fFdD")
_INT_SUFFIX = frozenset("lL")


class Token:
    """One lexical token: ``kind`` is ident/keyword/int/float/char/string/op/eof."""

    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos

    def __repr__(self) -> str:
        return f"Token({self.kind}, {self.text!r}, {self.pos})"


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch in "_$"


def _is_ident_part(ch: str) -> bool:
    return ch.isalnum() or ch in "_$"


def tokenize(text: str) -> list[Token]:
    """Lex ``text`` into tokens, raising JavaSyntaxError on malformed input."""
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n\f\x0b﻿":  # BOM tolerated anywhere as whitespace
            i += 1
            continue
        if ch == "/" and i + 1 < n:
            nxt = text[i + 1]
            if nxt == "/":
                end = text.find("\n", i + 2)
                i = n if end < 0 else end + 1
                continue
            if nxt == "*":
                end = text.find("*/", i + 2)
                if end < 0:
                    raise JavaSyntaxError("unterminated block comment", i, text)
                i = end + 2
                continue
        if _is_ident_start(ch):
            start = i
            i += 1
            while i < n and _is_ident_part(text[i]):
                i += 1
            word = text[start:i]
            kind = "keyword" if word in KEYWORDS else "ident"
            tokens.append(Token(kind, word, start))
            continue
        if ch in _DIGITS or (ch == "." and i + 1 < n and text[i + 1] in _DIGITS):
            tok, i = _lex_number(text, i)
            tokens.append(tok)
            continue
        if ch == '"':
            tok, i = _lex_string(text, i)
            tokens.append(tok)
            continue
        if ch == "'":
            tok, i = _lex_char(text, i)
            tokens.append(tok)
            continue
        op = None
        for length, table in ((4, _OPS4), (3, _OPS3), (2, _OPS2)):
            candidate = text[i : i + length]
            if candidate in table:
                op = candidate
                break
        if op is None and ch in _OPS1:
            op = ch
        if op is None:
            raise JavaSyntaxError(f"unexpected character {ch!r}", i, text)
        tokens.append(Token("op", op, i))
        i += len(op)
    tokens.append(Token("eof", "", n))
    return tokens


def _lex_number(text: str, i: int) -> tuple[Token, int]:
    n = len(text)
    start = i
    kind = "int"
    if text[i] == "0" and i + 1 < n and text[i + 1] in "xX":
        i += 2
        if i >= n or text[i] not in _HEX_DIGITS:
            raise JavaSyntaxError("malformed hex literal", start, text)
        while i < n and text[i] in _HEX_DIGITS:
            i += 1
        if i < n and text[i] in _INT_SUFFIX:
            i += 1
        return Token("int", text[start:i], start), i
    if text[i] == "0" and i + 1 < n and text[i + 1] in "bB":
        i += 2
        while i < n and text[i] in "01_":
            i += 1
        if i < n and text[i] in _INT_SUFFIX:
            i += 1
        return Token("int", text[start:i], start), i

    def eat_digits(j: int) -> int:
        while j < n and (text[j] in _DIGITS or text[j] == "_"):
            j += 1
        return j

    if text[i] == ".":
        kind = "float"
        i = eat_digits(i + 1)
    else:
        i = eat_digits(i)
        if i < n and text[i] == "." and _dot_continues_number(text, i):
            kind = "float"
            i = eat_digits(i + 1)
    if i < n and text[i] in "eE":
        j = i + 1
        if j < n and text[j] in "+-":
            j += 1
        if j < n and text[j] in _DIGITS:
            kind = "float"
            i = eat_digits(j)
    if i < n and text[i] in _FLOAT_SUFFIX:
        kind = "float"
        i += 1
    elif i < n and text[i] in _INT_SUFFIX:
        i += 1
    return Token(kind, text[start:i], start), i


def _dot_continues_number(text: str, i: int) -> bool:
    # At text[i] == "." with digits before it: decide between a float literal
    # ("1.5", "1.", "1.e3") and member access on a preceding token ("x1.foo").
    j = i + 1
    if j >= len(text):
        return True
    nxt = text[j]
    if nxt in _DIGITS:
        return True
    if nxt in "eE":
        k = j + 1
        if k < len(text) and text[k] in "+-":
            k += 1
        return k < len(text) and text[k] in _DIGITS
    if nxt in _FLOAT_SUFFIX:
        return j + 1 >= len(text) or not _is_ident_part(text[j + 1])
    return not (_is_ident_start(nxt) or nxt == ".")


def _lex_string(text: str, i: int) -> tuple[Token, int]:
    n = len(text)
    start = i
    if text.startswith('"""', i):
        end = text.find('"""', i + 3)
        if end < 0:
            raise JavaSyntaxError("unterminated text block", start, text)
        return Token("string", text[start : end + 3], start), end + 3
    i += 1
    while i < n:
        ch = text[i]
        if ch == "\\":
            i += 2
            continue
        if ch == '"':
            return Token("string", text[start : i + 1], start), i + 1
        if ch == "\n":
            break
        i += 1
    raise JavaSyntaxError("unterminated string literal", start, text)


def _lex_char(text: str, i: int) -> tuple[Token, int]:
    n = len(text)
    start = i
    i += 1
    while i < n:
        ch = text[i]
        if ch == "\\":
            i += 2
            continue
        if ch == "'":
            return Token("char", text[start : i + 1], start), i + 1
        if ch == "\n":
            break
        i += 1
    raise JavaSyntaxError("unterminated character literal", start, text)


def strip_comments(text: str) -> str:
    """Blank out // and /* */ comment bodies, preserving line structure.

    Tolerant by design: string and character literals are honored, and an
    unterminated comment or literal consumes the rest of the input instead
    of raising, so textual metrics stay available for broken files.
    """
    out: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            end = text.find("\n", i + 2)
            end = n if end < 0 else end
            out.append(" " * (end - i))
            i = end
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "*":
            end = text.find("*/", i + 2)
            end = n if end < 0 else end + 2
            for c in text[i:end]:
                out.append(c if c == "\n" else " ")
            i = end
            continue
        if ch in "\"'":
            quote = ch
            if quote == '"' and text.startswith('"""', i):
                end = text.find('"""', i + 3)
                end = n if end < 0 else end + 3
                out.append(text[i:end])
                i = end
                continue
            j = i + 1
            while j < n:
                if text[j] == "\\":
                    j += 2
                    continue
                if text[j] == quote or text[j] == "\n":
                    j += 1
                    break
                j += 1
            out.append(text[i:j])
            i = j
            continue
        out.append(ch)
        i += 1
    return "".join(out)
