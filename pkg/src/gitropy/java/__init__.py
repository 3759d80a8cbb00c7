"""Java language front end: lexer, recursive-descent parser, comment stripping."""

from .lexer import JavaSyntaxError, strip_comments, tokenize
from .parser import parse_java

__all__ = ["JavaSyntaxError", "parse_java", "strip_comments", "tokenize"]
