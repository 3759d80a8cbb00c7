"""Syntax trees and the structural measurables derived from them.

Node kinds come from a fixed grammar vocabulary per language; identifier
spellings never appear in kinds, so every structural measurement is blind to
naming.  Anonymous nodes (keywords, punctuation, operators) are kept in the
tree but excluded from edge collection.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterator

from .histogram import SymbolHistogram

EDGE_ARROW = "→"


class UnsupportedLanguageError(ValueError):
    """Requested language has no registered grammar."""


class SyntaxNode:
    """One node of a parse tree: a grammar ``kind``, children, and a named flag."""

    __slots__ = ("kind", "children", "is_named")

    def __init__(
        self,
        kind: str,
        children: list["SyntaxNode"] | None = None,
        is_named: bool = True,
    ):
        self.kind = kind
        self.children = children if children is not None else []
        self.is_named = is_named

    def walk(self) -> Iterator["SyntaxNode"]:
        """Depth-first iteration over the subtree rooted here."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def named_children(self) -> list["SyntaxNode"]:
        return [c for c in self.children if c.is_named]

    def __repr__(self) -> str:
        flag = "" if self.is_named else ", anon"
        return f"SyntaxNode({self.kind!r}, {len(self.children)} children{flag})"


@dataclass
class ParseOutcome:
    """Result of parsing one file; failures never abort a history walk."""

    status: str  # "ok" | "failed"
    tree: SyntaxNode | None = None
    error_count: int = 0
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def parse_source(text: str, language: str = "java") -> ParseOutcome:
    """Parse source text for ``language`` (currently only "java").

    Syntax errors yield ``status="failed"`` with ``error_count > 0``; only an
    unsupported language raises.
    """
    if language != "java":
        raise UnsupportedLanguageError(f"unsupported language: {language!r}")
    from .java import JavaSyntaxError, parse_java

    try:
        tree = parse_java(text)
    except JavaSyntaxError as exc:
        return ParseOutcome(status="failed", error_count=1, message=str(exc))
    return ParseOutcome(status="ok", tree=tree)


def edge_label(parent_kind: str, child_kind: str) -> str:
    """Canonical text form of an AST edge, stable across runs."""
    return f"{parent_kind}{EDGE_ARROW}{child_kind}"


def edge_histogram(tree: SyntaxNode) -> SymbolHistogram:
    """Histogram of parent->child kind pairs collected breadth-first.

    Only pairs where both endpoints are named nodes form edges; anonymous
    punctuation children are skipped but still traversed past.
    """
    counts: Counter[str] = Counter()
    queue: deque[SyntaxNode] = deque([tree])
    while queue:
        node = queue.popleft()
        for child in node.children:
            if node.is_named and child.is_named:
                counts[edge_label(node.kind, child.kind)] += 1
            queue.append(child)
    return SymbolHistogram(counts)


# Kinds that add one decision point each; short-circuit operators and case
# labels are detected structurally below (extended McCabe variant).
_DECISION_KINDS = frozenset(
    (
        "if_statement",
        "while_statement",
        "do_statement",
        "for_statement",
        "enhanced_for_statement",
        "catch_clause",
        "ternary_expression",
    )
)
_BODY_OWNER_KINDS = frozenset(
    (
        "method_declaration",
        "constructor_declaration",
        "initializer_block",
    )
)


def _is_decision(node: SyntaxNode) -> bool:
    if node.kind in _DECISION_KINDS:
        return True
    if node.kind == "binary_expression":
        return any(
            not c.is_named and c.kind in ("&&", "||") for c in node.children
        )
    if node.kind == "switch_label":
        return any(not c.is_named and c.kind == "case" for c in node.children)
    return False


def cyclomatic_complexity(tree: SyntaxNode) -> int:
    """Extended McCabe complexity summed over all executable bodies.

    Each method, constructor, or initializer body contributes 1 plus its
    decision points (if, loops, case labels, catch clauses, ternaries, and
    short-circuit operators).  Decision points outside any body, such as
    ternaries in field initializers, do not count.  A file without bodies
    scores 0.
    """
    total = 0
    stack: list[tuple[SyntaxNode, int]] = [(tree, 0)]
    while stack:
        node, body_depth = stack.pop()
        if body_depth > 0 and _is_decision(node):
            total += 1
        for child in node.children:
            child_depth = body_depth
            if (
                node.kind in _BODY_OWNER_KINDS
                and child.is_named
                and child.kind == "block"
            ):
                total += 1
                child_depth += 1
            stack.append((child, child_depth))
    return total


def line_count(text: str) -> int:
    """Number of lines containing at least one non-whitespace character."""
    return sum(1 for line in text.splitlines() if line.strip())
