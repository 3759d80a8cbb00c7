"""gitropy: structural and textual entropy metrics over git commit histories."""

from .histogram import (
    EntropyValue,
    SymbolHistogram,
    entropy,
    entropy_value,
    entropy_vs_context,
    l1_distance,
    merge,
    normalized_entropy,
)
from .tokens import TokenizationMode, apply_mode, extract_words, token_histogram
from .tree import (
    ParseOutcome,
    SyntaxNode,
    cyclomatic_complexity,
    edge_histogram,
    line_count,
    parse_source,
)

__version__ = "0.1.0"

__all__ = [
    "EntropyValue",
    "ParseOutcome",
    "SymbolHistogram",
    "SyntaxNode",
    "TokenizationMode",
    "apply_mode",
    "cyclomatic_complexity",
    "edge_histogram",
    "entropy",
    "entropy_value",
    "entropy_vs_context",
    "extract_words",
    "l1_distance",
    "line_count",
    "merge",
    "normalized_entropy",
    "parse_source",
    "token_histogram",
    "__version__",
]
