from __future__ import annotations

import re

import pytest

from gitropy.java import strip_comments
from gitropy.tree import (
    SyntaxNode,
    UnsupportedLanguageError,
    cyclomatic_complexity,
    edge_histogram,
    edge_label,
    line_count,
    parse_source,
)


def parse_ok(src: str) -> SyntaxNode:
    outcome = parse_source(src, "java")
    assert outcome.ok, outcome.message
    return outcome.tree


class TestParseSource:
    def test_minimal_compilation_unit(self):
        tree = parse_ok("class A {}")
        kinds = {node.kind for node in tree.walk() if node.is_named}
        assert "class_declaration" in kinds

    def test_empty_file(self):
        outcome = parse_source("", "java")
        assert outcome.ok
        assert outcome.tree.named_children() == []

    def test_unbalanced_brace_fails(self):
        outcome = parse_source("class A {", "java")
        assert outcome.status == "failed"
        assert outcome.error_count >= 1
        assert outcome.tree is None

    def test_unsupported_language(self):
        with pytest.raises(UnsupportedLanguageError):
            parse_source("fn main() {}", "rust")

    def test_byte_order_mark_tolerated(self):
        assert parse_source("﻿class A {}", "java").ok

    def test_switch_expression_with_yield(self):
        src = """
        class A {
            int grade(int score) {
                return switch (score) {
                    case 10, 9 -> 1;
                    case 8 -> 2;
                    default -> {
                        int fallback = 3;
                        yield fallback;
                    }
                };
            }
        }
        """
        tree = parse_ok(src)
        kinds = {node.kind for node in tree.walk() if node.is_named}
        assert "switch_expression" in kinds
        assert "yield_statement" in kinds
        # 1 body + case(10,9) + case 8; default never counts.
        assert cyclomatic_complexity(tree) == 3

    def test_type_pattern_case_labels(self):
        src = """
        class A {
            int measure(Object o) {
                return switch (o) {
                    case Integer boxed -> boxed;
                    case String text -> text.length();
                    default -> 0;
                };
            }
        }
        """
        tree = parse_ok(src)
        assert "type_pattern" in {n.kind for n in tree.walk() if n.is_named}
        assert cyclomatic_complexity(tree) == 3

    def test_determinism(self):
        src = "class A { int f(int x) { return x > 0 ? x : -x; } }"
        first, second = parse_ok(src), parse_ok(src)
        assert edge_histogram(first) == edge_histogram(second)
        assert cyclomatic_complexity(first) == cyclomatic_complexity(second)


class TestEdgeHistogram:
    def test_abstract_tree_edges(self):
        tree = SyntaxNode(
            "R", [SyntaxNode("A", [SyntaxNode("C")]), SyntaxNode("B")]
        )
        assert edge_histogram(tree).to_dict() == {
            edge_label("R", "A"): 1,
            edge_label("R", "B"): 1,
            edge_label("A", "C"): 1,
        }

    def test_leaf_only_root(self):
        assert edge_histogram(SyntaxNode("leaf")).total == 0

    def test_anonymous_children_form_no_edges(self):
        tree = SyntaxNode(
            "stmt",
            [SyntaxNode(";", is_named=False), SyntaxNode("identifier")],
        )
        assert edge_histogram(tree).to_dict() == {edge_label("stmt", "identifier"): 1}

    def test_punctuation_never_appears_in_labels(self):
        tree = parse_ok(
            "class A { int f(int a, int b) { return (a + b) * 2; } }"
        )
        for label in edge_histogram(tree).to_dict():
            assert not re.search(r"[{}();,]", label)

    def test_identifier_renaming_invariance(self):
        src = """
        class Totals {
            private int runningTotal;
            int accumulate(int nextValue) {
                if (nextValue > 0) {
                    runningTotal += nextValue;
                }
                return runningTotal;
            }
        }
        """
        renames = {
            "Totals": "Zq", "runningTotal": "aA1", "accumulate": "zz",
            "nextValue": "b2",
        }
        renamed = re.sub(
            r"\b(" + "|".join(renames) + r")\b",
            lambda m: renames[m.group(0)],
            src,
        )
        assert renamed != src
        assert edge_histogram(parse_ok(src)) == edge_histogram(parse_ok(renamed))

    def test_structurally_identical_methods_identical_histograms(self):
        a = "class A { int add(int x, int y) { return x + y; } }"
        b = "class B { int mul(int p, int q) { return p + q; } }"
        assert edge_histogram(parse_ok(a)) == edge_histogram(parse_ok(b))

    def test_edge_total_bounded_by_named_nodes(self):
        src = """
        class Bound {
            void loop(java.util.List<String> xs) {
                for (String x : xs) { System.out.println(x); }
            }
        }
        """
        tree = parse_ok(src)
        named = sum(1 for node in tree.walk() if node.is_named)
        assert edge_histogram(tree).total <= named - 1

    def test_concatenated_declarations_sum_internal_edges(self):
        one = "class One { int f() { return 1; } }"
        two = "class Two { void g(int q) { q++; } }"
        combined = one + "\n" + two

        def internal(src: str) -> dict[str, int]:
            counts = edge_histogram(parse_ok(src)).to_dict()
            return {k: v for k, v in counts.items() if not k.startswith("program")}

        expected: dict[str, int] = internal(one)
        for label, count in internal(two).items():
            expected[label] = expected.get(label, 0) + count
        assert internal(combined) == expected


class TestCyclomaticComplexity:
    def test_empty_method_is_one(self):
        assert cyclomatic_complexity(parse_ok("class A { void f() { } }")) == 1

    def test_single_if_is_two(self):
        src = "class A { void f(int x) { if (x > 0) { x = 1; } } }"
        assert cyclomatic_complexity(parse_ok(src)) == 2

    def test_if_while_ternary_is_four(self):
        src = """
        class A {
            int f(int x) {
                if (x > 0) { x = 1; }
                while (x < 10) { x++; }
                return x > 5 ? 1 : 0;
            }
        }
        """
        assert cyclomatic_complexity(parse_ok(src)) == 4

    def test_no_bodies_scores_zero(self):
        assert cyclomatic_complexity(parse_ok("interface I { int f(); }")) == 0
        assert cyclomatic_complexity(parse_ok("class A { int x = 1; }")) == 0

    def test_field_initializer_ternary_not_counted(self):
        src = "class A { int x = 1 > 0 ? 1 : 2; void f() { } }"
        assert cyclomatic_complexity(parse_ok(src)) == 1

    def test_case_labels_and_default(self):
        src = """
        class A {
            int f(int v) {
                switch (v) {
                    case 1: return 1;
                    case 2: return 2;
                    default: return 0;
                }
            }
        }
        """
        # 1 body + 2 case labels; default does not count.
        assert cyclomatic_complexity(parse_ok(src)) == 3

    def test_short_circuit_operators(self):
        src = """
        class A {
            boolean f(boolean a, boolean b, boolean c) {
                return a && b || c;
            }
        }
        """
        assert cyclomatic_complexity(parse_ok(src)) == 3

    def test_catch_clauses_count(self):
        src = """
        class A {
            int f(String s) {
                try {
                    return Integer.parseInt(s);
                } catch (NumberFormatException e) {
                    return 0;
                } catch (RuntimeException e) {
                    return -1;
                }
            }
        }
        """
        assert cyclomatic_complexity(parse_ok(src)) == 3

    def test_constructor_and_initializer_bodies(self):
        src = """
        class A {
            static { int q = 1; }
            A() { }
            void f() { }
        }
        """
        assert cyclomatic_complexity(parse_ok(src)) == 3

    def test_loops_all_count(self):
        src = """
        class A {
            void f(int[] xs) {
                for (int i = 0; i < 3; i++) { }
                for (int x : xs) { }
                do { } while (false);
            }
        }
        """
        assert cyclomatic_complexity(parse_ok(src)) == 4


class TestLineCount:
    def test_empty(self):
        assert line_count("") == 0

    def test_blank_lines_excluded(self):
        assert line_count("a\n\nb\n") == 2

    def test_single_line(self):
        assert line_count("class A {}\n") == 1

    def test_whitespace_only_lines_excluded(self):
        assert line_count("a\n   \n\t\nb") == 2


class TestStripComments:
    def test_line_and_block_comments_removed(self):
        src = "int a; // trailing words\n/* block\nwords */ int b;"
        cleaned = strip_comments(src)
        assert "trailing" not in cleaned
        assert "block" not in cleaned
        assert "int a;" in cleaned and "int b;" in cleaned
        assert cleaned.count("\n") == src.count("\n")

    def test_string_contents_preserved(self):
        src = 'String u = "http://x// /*y*/";'
        assert strip_comments(src) == src

    def test_unterminated_comment_is_tolerated(self):
        assert "later" not in strip_comments("int a; /* never closed later")

    def test_comment_marker_inside_char_literal(self):
        src = "char c = '/'; int x; // real\n"
        cleaned = strip_comments(src)
        assert "real" not in cleaned
        assert "char c = '/';" in cleaned
