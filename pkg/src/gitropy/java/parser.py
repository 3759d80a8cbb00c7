"""Recursive-descent parser for a practical subset of Java.

Covers the constructs that dominate real-world Java corpora: packages and
imports, class/interface/enum/annotation/record declarations, generics,
annotations, lambdas, method references, anonymous classes, the classic and
arrow forms of switch, and try-with-resources.  Parsing is fail-fast: the
first syntax error (or an unsupported construct) raises
:class:`JavaSyntaxError`; callers record the file as a parse failure and
carry on.

The produced tree keeps anonymous token nodes (keywords, punctuation,
operators) alongside named grammar nodes, so downstream measurements can
distinguish e.g. ``&&`` from ``||`` inside a ``binary_expression`` without
node kinds ever carrying identifier spellings.
"""

from __future__ import annotations

from ..tree import SyntaxNode
from .lexer import JavaSyntaxError, Token, tokenize

_PRIMITIVE_KINDS = {
    "byte": "integral_type",
    "short": "integral_type",
    "int": "integral_type",
    "long": "integral_type",
    "char": "integral_type",
    "float": "floating_point_type",
    "double": "floating_point_type",
    "boolean": "boolean_type",
}

_MODIFIER_WORDS = frozenset(
    (
        "public", "protected", "private", "static", "abstract", "final",
        "native", "synchronized", "transient", "volatile", "strictfp",
        "default",
    )
)

_ASSIGN_OPS = frozenset(
    ("=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>=")
)

# Binary operator levels, lowest precedence first.
_BINARY_LEVELS = (
    ("||",),
    ("&&",),
    ("|",),
    ("^",),
    ("&",),
    ("==", "!="),
    ("<", ">", "<=", ">="),
    ("<<", ">>", ">>>"),
    ("+", "-"),
    ("*", "/", "%"),
)

_STATEMENT_KEYWORDS = frozenset(
    (
        "if", "while", "do", "for", "switch", "try", "return", "throw",
        "break", "continue", "synchronized", "assert",
    )
)

# Tokens that may start the operand of a cast; '+' and '-' are excluded so
# "(x) - y" stays a subtraction.
_CAST_FOLLOW_KINDS = frozenset(("ident", "int", "float", "char", "string"))
_CAST_FOLLOW_OPS = frozenset(("!", "~", "("))
_CAST_FOLLOW_WORDS = frozenset(("new", "this", "super"))

_GT_SPLIT = {">>": ">", ">>>": ">>", ">=": "=", ">>=": ">=", ">>>=": ">>="}


def parse_java(text: str) -> SyntaxNode:
    """Parse Java source text into a syntax tree (raises JavaSyntaxError)."""
    return _Parser(text).parse_program()


def _anon(token: Token) -> SyntaxNode:
    return SyntaxNode(token.text, is_named=False)


def _int_literal_kind(text: str) -> str:
    if text[:2].lower() == "0x":
        return "hex_integer_literal"
    if text[:2].lower() == "0b":
        return "binary_integer_literal"
    if len(text) > 1 and text[0] == "0" and text[1].isdigit():
        return "octal_integer_literal"
    return "decimal_integer_literal"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        j = self.i + offset
        return self.toks[j] if j < len(self.toks) else self.toks[-1]

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind in ("op", "keyword") and tok.text == text

    def at_ident(self, text: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind == "ident" and (text is None or tok.text == text)

    def advance(self) -> Token:
        tok = self.toks[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def accept(self, text: str) -> Token | None:
        if self.at(text):
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        if self.at(text):
            return self.advance()
        tok = self.peek()
        raise JavaSyntaxError(
            f"expected {text!r} but found {tok.text or tok.kind!r}",
            tok.pos,
            self.text,
        )

    def expect_ident(self) -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            raise JavaSyntaxError(
                f"expected identifier but found {tok.text or tok.kind!r}",
                tok.pos,
                self.text,
            )
        return self.advance()

    def eat(self, text: str) -> SyntaxNode:
        return _anon(self.expect(text))

    def error(self, message: str) -> JavaSyntaxError:
        tok = self.peek()
        return JavaSyntaxError(message, tok.pos, self.text)

    def expect_gt(self) -> SyntaxNode:
        """Consume one '>' out of a possibly max-munched >>, >>>, >= token."""
        tok = self.peek()
        if tok.kind == "op" and tok.text == ">":
            self.advance()
            return SyntaxNode(">", is_named=False)
        if tok.kind == "op" and tok.text in _GT_SPLIT:
            self.toks[self.i] = Token("op", _GT_SPLIT[tok.text], tok.pos + 1)
            return SyntaxNode(">", is_named=False)
        raise self.error("expected '>' closing type arguments")

    # -- program structure -------------------------------------------------

    def parse_program(self) -> SyntaxNode:
        children: list[SyntaxNode] = []
        annotations = []
        while self.at("@") and self.peek(1).text != "interface":
            annotations.append(self.parse_annotation())
        if self.at("package"):
            children.append(self.parse_package(annotations))
            annotations = []
        while self.at("import"):
            children.append(self.parse_import())
        if annotations:
            # Annotations parsed ahead of a type declaration.
            children.append(self.parse_type_declaration(pre=annotations))
        while self.peek().kind != "eof":
            if self.at(";"):
                children.append(_anon(self.advance()))
                continue
            children.append(self.parse_type_declaration())
        return SyntaxNode("program", children)

    def parse_package(self, annotations: list[SyntaxNode]) -> SyntaxNode:
        children = list(annotations)
        children.append(self.eat("package"))
        children.append(self.parse_qualified_name())
        children.append(self.eat(";"))
        return SyntaxNode("package_declaration", children)

    def parse_import(self) -> SyntaxNode:
        children = [self.eat("import")]
        if self.at("static"):
            children.append(_anon(self.advance()))
        children.append(self.parse_qualified_name())
        if self.at("."):
            children.append(_anon(self.advance()))
            children.append(self.eat("*"))
        children.append(self.eat(";"))
        return SyntaxNode("import_declaration", children)

    def parse_qualified_name(self) -> SyntaxNode:
        node = self._ident_anchor()
        while self.at(".") and self.peek(1).kind == "ident":
            self.advance()
            node = SyntaxNode("scoped_identifier", [node, self._ident_anchor()])
        return node

    def _ident_anchor(self) -> SyntaxNode:
        self.expect_ident()
        return SyntaxNode("identifier")

    # -- modifiers and annotations ------------------------------------------

    def parse_modifiers(self) -> SyntaxNode | None:
        children: list[SyntaxNode] = []
        while True:
            tok = self.peek()
            if tok.kind == "keyword" and tok.text in _MODIFIER_WORDS:
                children.append(_anon(self.advance()))
            elif self.at("@") and self.peek(1).text != "interface":
                children.append(self.parse_annotation())
            else:
                break
        if not children:
            return None
        return SyntaxNode("modifiers", children)

    def parse_annotation(self) -> SyntaxNode:
        children = [self.eat("@"), self.parse_qualified_name()]
        if self.at("("):
            children.append(self.parse_annotation_arguments())
        return SyntaxNode("annotation", children)

    def parse_annotation_arguments(self) -> SyntaxNode:
        children = [self.eat("(")]
        if not self.at(")"):
            while True:
                if self.at_ident() and self.peek(1).text == "=":
                    pair = [SyntaxNode("identifier")]
                    self.expect_ident()
                    pair.append(_anon(self.advance()))
                    pair.append(self.parse_element_value())
                    children.append(SyntaxNode("element_value_pair", pair))
                else:
                    children.append(self.parse_element_value())
                if self.at(","):
                    children.append(_anon(self.advance()))
                    continue
                break
        children.append(self.eat(")"))
        return SyntaxNode("annotation_argument_list", children)

    def parse_element_value(self) -> SyntaxNode:
        if self.at("@"):
            return self.parse_annotation()
        if self.at("{"):
            return self.parse_array_initializer()
        return self.parse_ternary()

    # -- types ---------------------------------------------------------------

    def at_primitive(self) -> bool:
        tok = self.peek()
        return tok.kind == "keyword" and tok.text in _PRIMITIVE_KINDS

    def parse_type(self) -> SyntaxNode:
        node = self.parse_base_type()
        return self.parse_dims_onto(node)

    def parse_base_type(self) -> SyntaxNode:
        tok = self.peek()
        if self.at_primitive():
            self.advance()
            return SyntaxNode(_PRIMITIVE_KINDS[tok.text], [_anon(tok)])
        if self.at("void"):
            self.advance()
            return SyntaxNode("void_type", [_anon(tok)])
        if tok.kind != "ident":
            raise self.error("expected a type")
        self.advance()
        node: SyntaxNode = SyntaxNode("type_identifier")
        if self.at("<"):
            node = SyntaxNode("generic_type", [node, self.parse_type_arguments()])
        while self.at(".") and self.peek(1).kind == "ident":
            self.advance()
            self.expect_ident()
            right = SyntaxNode("type_identifier")
            node = SyntaxNode("scoped_type_identifier", [node, right])
            if self.at("<"):
                node = SyntaxNode(
                    "generic_type", [node, self.parse_type_arguments()]
                )
        return node

    def parse_dims_onto(self, node: SyntaxNode) -> SyntaxNode:
        dims: list[SyntaxNode] = []
        while self.at("[") and self.peek(1).text == "]":
            dims.append(_anon(self.advance()))
            dims.append(_anon(self.advance()))
        if dims:
            return SyntaxNode("array_type", [node, SyntaxNode("dimensions", dims)])
        return node

    def parse_type_arguments(self) -> SyntaxNode:
        children = [self.eat("<")]
        if not (self.peek().kind == "op" and self.peek().text in _GT_SPLIT) and not self.at(">"):
            while True:
                children.append(self.parse_type_argument())
                if self.at(","):
                    children.append(_anon(self.advance()))
                    continue
                break
        children.append(self.expect_gt())
        return SyntaxNode("type_arguments", children)

    def parse_type_argument(self) -> SyntaxNode:
        if self.at("?"):
            children = [_anon(self.advance())]
            if self.at("extends") or self.at("super"):
                children.append(_anon(self.advance()))
                children.append(self.parse_type())
            return SyntaxNode("wildcard", children)
        return self.parse_type()

    def parse_type_parameters(self) -> SyntaxNode:
        children = [self.eat("<")]
        while True:
            param = [self._ident_anchor()]
            if self.at("extends"):
                param.append(_anon(self.advance()))
                param.append(self.parse_type())
                while self.at("&"):
                    param.append(_anon(self.advance()))
                    param.append(self.parse_type())
            children.append(SyntaxNode("type_parameter", param))
            if self.at(","):
                children.append(_anon(self.advance()))
                continue
            break
        children.append(self.expect_gt())
        return SyntaxNode("type_parameters", children)

    # -- type declarations ----------------------------------------------------

    def parse_type_declaration(
        self, pre: list[SyntaxNode] | None = None
    ) -> SyntaxNode:
        mods = self.parse_modifiers()
        if pre:
            mod_children = pre + (mods.children if mods else [])
            mods = SyntaxNode("modifiers", mod_children)
        head: list[SyntaxNode] = [mods] if mods else []
        if self.at("class"):
            return self.parse_class_declaration(head)
        if self.at("interface"):
            return self.parse_interface_declaration(head)
        if self.at("enum"):
            return self.parse_enum_declaration(head)
        if self.at("@") and self.peek(1).text == "interface":
            return self.parse_annotation_type_declaration(head)
        if self.at_ident("record") and self.peek(1).kind == "ident":
            return self.parse_record_declaration(head)
        raise self.error("expected a type declaration")

    def parse_class_declaration(self, head: list[SyntaxNode]) -> SyntaxNode:
        children = head + [self.eat("class"), self._ident_anchor()]
        if self.at("<"):
            children.append(self.parse_type_parameters())
        if self.at("extends"):
            children.append(
                SyntaxNode("superclass", [_anon(self.advance()), self.parse_type()])
            )
        if self.at("implements"):
            children.append(self.parse_interface_list("super_interfaces"))
        children.append(self.parse_class_body())
        return SyntaxNode("class_declaration", children)

    def parse_interface_declaration(self, head: list[SyntaxNode]) -> SyntaxNode:
        children = head + [self.eat("interface"), self._ident_anchor()]
        if self.at("<"):
            children.append(self.parse_type_parameters())
        if self.at("extends"):
            children.append(self.parse_interface_list("extends_interfaces"))
        children.append(self.parse_class_body())
        return SyntaxNode("interface_declaration", children)

    def parse_interface_list(self, kind: str) -> SyntaxNode:
        children = [_anon(self.advance()), self.parse_type()]
        while self.at(","):
            children.append(_anon(self.advance()))
            children.append(self.parse_type())
        return SyntaxNode(kind, children)

    def parse_enum_declaration(self, head: list[SyntaxNode]) -> SyntaxNode:
        children = head + [self.eat("enum"), self._ident_anchor()]
        if self.at("implements"):
            children.append(self.parse_interface_list("super_interfaces"))
        children.append(self.parse_enum_body())
        return SyntaxNode("enum_declaration", children)

    def parse_enum_body(self) -> SyntaxNode:
        children = [self.eat("{")]
        while not self.at(";") and not self.at("}"):
            constant: list[SyntaxNode] = []
            while self.at("@"):
                constant.append(self.parse_annotation())
            constant.append(self._ident_anchor())
            if self.at("("):
                constant.append(self.parse_argument_list())
            if self.at("{"):
                constant.append(self.parse_class_body())
            children.append(SyntaxNode("enum_constant", constant))
            if self.at(","):
                children.append(_anon(self.advance()))
                continue
            break
        if self.at(";"):
            children.append(_anon(self.advance()))
            while not self.at("}"):
                children.append(self.parse_class_member())
        children.append(self.eat("}"))
        return SyntaxNode("enum_body", children)

    def parse_annotation_type_declaration(self, head: list[SyntaxNode]) -> SyntaxNode:
        children = head + [self.eat("@"), self.eat("interface"), self._ident_anchor()]
        children.append(self.parse_class_body())
        return SyntaxNode("annotation_type_declaration", children)

    def parse_record_declaration(self, head: list[SyntaxNode]) -> SyntaxNode:
        children = head + [_anon(self.advance()), self._ident_anchor()]
        if self.at("<"):
            children.append(self.parse_type_parameters())
        children.append(self.parse_formal_parameters())
        if self.at("implements"):
            children.append(self.parse_interface_list("super_interfaces"))
        children.append(self.parse_class_body())
        return SyntaxNode("record_declaration", children)

    # -- class members ---------------------------------------------------------

    def parse_class_body(self) -> SyntaxNode:
        children = [self.eat("{")]
        while not self.at("}"):
            if self.peek().kind == "eof":
                raise self.error("unterminated class body")
            children.append(self.parse_class_member())
        children.append(self.eat("}"))
        return SyntaxNode("class_body", children)

    def parse_class_member(self) -> SyntaxNode:
        if self.at(";"):
            return _anon(self.advance())
        mods = self.parse_modifiers()
        head: list[SyntaxNode] = [mods] if mods else []
        if self.at("class"):
            return self.parse_class_declaration(head)
        if self.at("interface"):
            return self.parse_interface_declaration(head)
        if self.at("enum"):
            return self.parse_enum_declaration(head)
        if self.at("@") and self.peek(1).text == "interface":
            return self.parse_annotation_type_declaration(head)
        if (
            self.at_ident("record")
            and self.peek(1).kind == "ident"
            and self.peek(2).text == "("
        ):
            return self.parse_record_declaration(head)
        if self.at("{"):
            return SyntaxNode("initializer_block", head + [self.parse_block()])
        type_params = None
        if self.at("<"):
            type_params = self.parse_type_parameters()
        if self.at_ident() and self.peek(1).text == "(":
            children = head + ([type_params] if type_params else [])
            children.append(self._ident_anchor())
            children.append(self.parse_formal_parameters())
            if self.at("throws"):
                children.append(self.parse_throws())
            children.append(self.parse_block())
            return SyntaxNode("constructor_declaration", children)
        return self.parse_method_or_field(head, type_params)

    def parse_method_or_field(
        self, head: list[SyntaxNode], type_params: SyntaxNode | None
    ) -> SyntaxNode:
        result_type = self.parse_type()
        name = self._ident_anchor()
        if self.at("("):
            children = head + ([type_params] if type_params else [])
            children += [result_type, name, self.parse_formal_parameters()]
            children = self._parse_extra_dims(children)
            if self.at("throws"):
                children.append(self.parse_throws())
            if self.at("default"):
                # Annotation-type element default value.
                children.append(_anon(self.advance()))
                children.append(self.parse_element_value())
                children.append(self.eat(";"))
            elif self.at(";"):
                children.append(_anon(self.advance()))
            else:
                children.append(self.parse_block())
            return SyntaxNode("method_declaration", children)
        if type_params is not None:
            raise self.error("type parameters are only valid on methods")
        children = head + [result_type]
        children.append(self.parse_variable_declarator(name))
        while self.at(","):
            children.append(_anon(self.advance()))
            children.append(self.parse_variable_declarator(self._ident_anchor()))
        children.append(self.eat(";"))
        return SyntaxNode("field_declaration", children)

    def _parse_extra_dims(self, children: list[SyntaxNode]) -> list[SyntaxNode]:
        while self.at("[") and self.peek(1).text == "]":
            children.append(_anon(self.advance()))
            children.append(_anon(self.advance()))
        return children

    def parse_variable_declarator(self, name: SyntaxNode) -> SyntaxNode:
        children = [name]
        self._parse_extra_dims(children)
        if self.at("="):
            children.append(_anon(self.advance()))
            if self.at("{"):
                children.append(self.parse_array_initializer())
            else:
                children.append(self.parse_expression())
        return SyntaxNode("variable_declarator", children)

    def parse_formal_parameters(self) -> SyntaxNode:
        children = [self.eat("(")]
        if not self.at(")"):
            while True:
                children.append(self.parse_formal_parameter())
                if self.at(","):
                    children.append(_anon(self.advance()))
                    continue
                break
        children.append(self.eat(")"))
        return SyntaxNode("formal_parameters", children)

    def parse_formal_parameter(self) -> SyntaxNode:
        mods = self.parse_modifiers()
        children: list[SyntaxNode] = [mods] if mods else []
        children.append(self.parse_type())
        kind = "formal_parameter"
        if self.at("..."):
            children.append(_anon(self.advance()))
            kind = "spread_parameter"
        children.append(self._ident_anchor())
        self._parse_extra_dims(children)
        return SyntaxNode(kind, children)

    def parse_throws(self) -> SyntaxNode:
        children = [self.eat("throws"), self.parse_type()]
        while self.at(","):
            children.append(_anon(self.advance()))
            children.append(self.parse_type())
        return SyntaxNode("throws", children)

    def parse_array_initializer(self) -> SyntaxNode:
        children = [self.eat("{")]
        while not self.at("}"):
            if self.at("{"):
                children.append(self.parse_array_initializer())
            else:
                children.append(self.parse_expression())
            if self.at(","):
                children.append(_anon(self.advance()))
                continue
            break
        children.append(self.eat("}"))
        return SyntaxNode("array_initializer", children)

    # -- statements --------------------------------------------------------------

    def parse_block(self) -> SyntaxNode:
        children = [self.eat("{")]
        while not self.at("}"):
            if self.peek().kind == "eof":
                raise self.error("unterminated block")
            children.append(self.parse_statement())
        children.append(self.eat("}"))
        return SyntaxNode("block", children)

    def parse_statement(self) -> SyntaxNode:
        tok = self.peek()
        if self.at("{"):
            return self.parse_block()
        if self.at(";"):
            return _anon(self.advance())
        if tok.kind == "keyword":
            word = tok.text
            if word in _STATEMENT_KEYWORDS:
                return getattr(self, f"_parse_{word}_statement")()
            if word in ("class", "interface", "enum") or word in _MODIFIER_WORDS:
                saved = self.i
                try:
                    return self.parse_local_declaration()
                except JavaSyntaxError:
                    self.i = saved
                    return self.parse_expression_statement()
            if word in _PRIMITIVE_KINDS or word == "final":
                return self.parse_local_declaration()
        if tok.kind == "ident" and self.peek(1).text == ":" and self.peek(1).kind == "op":
            label = self._ident_anchor()
            colon = _anon(self.advance())
            return SyntaxNode(
                "labeled_statement", [label, colon, self.parse_statement()]
            )
        if tok.kind == "ident" and tok.text == "yield" and self._starts_expression(1):
            kw = _anon(self.advance())
            return SyntaxNode(
                "yield_statement", [kw, self.parse_expression(), self.eat(";")]
            )
        if self.at("@"):
            return self.parse_local_declaration()
        saved = self.i
        if tok.kind == "ident" or self.at_primitive():
            try:
                return self.parse_local_declaration()
            except JavaSyntaxError:
                self.i = saved
        return self.parse_expression_statement()

    def _starts_expression(self, offset: int) -> bool:
        tok = self.peek(offset)
        if tok.kind in ("ident", "int", "float", "char", "string"):
            return True
        if tok.kind == "keyword":
            return tok.text in ("new", "this", "super", "switch")
        return tok.kind == "op" and tok.text in ("(", "!", "~", "-", "+")

    def parse_local_declaration(self) -> SyntaxNode:
        mods = self.parse_modifiers()
        head: list[SyntaxNode] = [mods] if mods else []
        if self.at("class"):
            return self.parse_class_declaration(head)
        if self.at("interface"):
            return self.parse_interface_declaration(head)
        if self.at("enum"):
            return self.parse_enum_declaration(head)
        var_type = self.parse_type()
        name = self._ident_anchor()
        if not (
            self.at("=") or self.at(";") or self.at(",")
            or (self.at("[") and self.peek(1).text == "]")
        ):
            raise self.error("not a local variable declaration")
        children = head + [var_type, self.parse_variable_declarator(name)]
        while self.at(","):
            children.append(_anon(self.advance()))
            children.append(self.parse_variable_declarator(self._ident_anchor()))
        children.append(self.eat(";"))
        return SyntaxNode("local_variable_declaration", children)

    def parse_expression_statement(self) -> SyntaxNode:
        expr = self.parse_expression()
        return SyntaxNode("expression_statement", [expr, self.eat(";")])

    def _parse_if_statement(self) -> SyntaxNode:
        children = [self.eat("if"), self.eat("("), self.parse_expression(), self.eat(")")]
        children.append(self.parse_statement())
        if self.at("else"):
            children.append(_anon(self.advance()))
            children.append(self.parse_statement())
        return SyntaxNode("if_statement", children)

    def _parse_while_statement(self) -> SyntaxNode:
        children = [self.eat("while"), self.eat("("), self.parse_expression(), self.eat(")")]
        children.append(self.parse_statement())
        return SyntaxNode("while_statement", children)

    def _parse_do_statement(self) -> SyntaxNode:
        children = [self.eat("do"), self.parse_statement(), self.eat("while")]
        children += [self.eat("("), self.parse_expression(), self.eat(")"), self.eat(";")]
        return SyntaxNode("do_statement", children)

    def _parse_for_statement(self) -> SyntaxNode:
        kw = self.eat("for")
        open_paren = self.eat("(")
        if self._for_is_enhanced():
            mods = self.parse_modifiers()
            children = [kw, open_paren] + ([mods] if mods else [])
            children.append(self.parse_type())
            children.append(self._ident_anchor())
            children.append(self.eat(":"))
            children.append(self.parse_expression())
            children.append(self.eat(")"))
            children.append(self.parse_statement())
            return SyntaxNode("enhanced_for_statement", children)
        children = [kw, open_paren]
        if not self.at(";"):
            saved = self.i
            try:
                decl = self.parse_local_declaration()  # consumes its ';'
                children.append(decl)
            except JavaSyntaxError:
                self.i = saved
                children.append(self.parse_expression_list())
                children.append(self.eat(";"))
        else:
            children.append(_anon(self.advance()))
        if not self.at(";"):
            children.append(self.parse_expression())
        children.append(self.eat(";"))
        if not self.at(")"):
            children.append(self.parse_expression_list())
        children.append(self.eat(")"))
        children.append(self.parse_statement())
        return SyntaxNode("for_statement", children)

    def _for_is_enhanced(self) -> bool:
        # Scan to the matching ')': a top-level ';' means a classic for.
        depth = 0
        j = self.i
        while j < len(self.toks):
            text = self.toks[j].text
            if text in ("(", "[", "{"):
                depth += 1
            elif text in (")", "]", "}"):
                if depth == 0:
                    return False
                depth -= 1
            elif text == ";" and depth == 0:
                return False
            elif text == ":" and depth == 0:
                return True
            j += 1
        return False

    def parse_expression_list(self) -> SyntaxNode:
        children = [self.parse_expression()]
        while self.at(","):
            children.append(_anon(self.advance()))
            children.append(self.parse_expression())
        if len(children) == 1:
            return children[0]
        return SyntaxNode("expression_list", children)

    def _parse_switch_statement(self) -> SyntaxNode:
        children = [self.eat("switch"), self.eat("("), self.parse_expression(), self.eat(")")]
        children.append(self.parse_switch_block())
        return SyntaxNode("switch_statement", children)

    def parse_switch_block(self) -> SyntaxNode:
        children = [self.eat("{")]
        while not self.at("}"):
            if self.at("case") or self.at("default"):
                children.append(self.parse_switch_label())
            else:
                children.append(self.parse_statement())
        children.append(self.eat("}"))
        return SyntaxNode("switch_block", children)

    def parse_switch_label(self) -> SyntaxNode:
        children: list[SyntaxNode] = [_anon(self.advance())]
        if children[0].kind == "case":
            children.append(self.parse_case_item())
            while self.at(","):
                children.append(_anon(self.advance()))
                children.append(self.parse_case_item())
        if self.at("->"):
            children.append(_anon(self.advance()))
            label = SyntaxNode("switch_label", children)
            if self.at("{"):
                body = self.parse_block()
            elif self.at("throw"):
                body = self._parse_throw_statement()
            else:
                body = self.parse_expression_statement()
            return SyntaxNode("switch_rule", [label, body])
        children.append(self.eat(":"))
        return SyntaxNode("switch_label", children)

    def parse_case_item(self) -> SyntaxNode:
        # A constant expression, `default` (null/default label form), or a
        # type pattern such as `Integer boxed`.
        if self.at("default"):
            return _anon(self.advance())
        saved = self.i
        try:
            item = self.parse_ternary()
            if self.at(",") or self.at("->") or self.at(":"):
                return item
        except JavaSyntaxError:
            pass
        self.i = saved
        pattern = [self.parse_type(), self._ident_anchor()]
        return SyntaxNode("type_pattern", pattern)

    def _parse_try_statement(self) -> SyntaxNode:
        children = [self.eat("try")]
        if self.at("("):
            children.append(self.parse_resource_specification())
        children.append(self.parse_block())
        while self.at("catch"):
            clause = [_anon(self.advance()), self.eat("(")]
            mods = self.parse_modifiers()
            param: list[SyntaxNode] = [mods] if mods else []
            catch_type = [self.parse_type()]
            while self.at("|"):
                catch_type.append(_anon(self.advance()))
                catch_type.append(self.parse_type())
            param.append(SyntaxNode("catch_type", catch_type))
            param.append(self._ident_anchor())
            clause.append(SyntaxNode("catch_formal_parameter", param))
            clause.append(self.eat(")"))
            clause.append(self.parse_block())
            children.append(SyntaxNode("catch_clause", clause))
        if self.at("finally"):
            children.append(
                SyntaxNode("finally_clause", [_anon(self.advance()), self.parse_block()])
            )
        return SyntaxNode("try_statement", children)

    def parse_resource_specification(self) -> SyntaxNode:
        children = [self.eat("(")]
        while not self.at(")"):
            children.append(self.parse_resource())
            if self.at(";"):
                children.append(_anon(self.advance()))
                continue
            break
        children.append(self.eat(")"))
        return SyntaxNode("resource_specification", children)

    def parse_resource(self) -> SyntaxNode:
        saved = self.i
        try:
            mods = self.parse_modifiers()
            children: list[SyntaxNode] = [mods] if mods else []
            children.append(self.parse_type())
            children.append(self._ident_anchor())
            children.append(self.eat("="))
            children.append(self.parse_expression())
            return SyntaxNode("resource", children)
        except JavaSyntaxError:
            self.i = saved
            return SyntaxNode("resource", [self.parse_expression()])

    def _parse_return_statement(self) -> SyntaxNode:
        children = [self.eat("return")]
        if not self.at(";"):
            children.append(self.parse_expression())
        children.append(self.eat(";"))
        return SyntaxNode("return_statement", children)

    def _parse_throw_statement(self) -> SyntaxNode:
        return SyntaxNode(
            "throw_statement", [self.eat("throw"), self.parse_expression(), self.eat(";")]
        )

    def _parse_break_statement(self) -> SyntaxNode:
        children = [self.eat("break")]
        if self.at_ident():
            children.append(self._ident_anchor())
        children.append(self.eat(";"))
        return SyntaxNode("break_statement", children)

    def _parse_continue_statement(self) -> SyntaxNode:
        children = [self.eat("continue")]
        if self.at_ident():
            children.append(self._ident_anchor())
        children.append(self.eat(";"))
        return SyntaxNode("continue_statement", children)

    def _parse_synchronized_statement(self) -> SyntaxNode:
        children = [self.eat("synchronized"), self.eat("("), self.parse_expression(), self.eat(")")]
        children.append(self.parse_block())
        return SyntaxNode("synchronized_statement", children)

    def _parse_assert_statement(self) -> SyntaxNode:
        children = [self.eat("assert"), self.parse_expression()]
        if self.at(":"):
            children.append(_anon(self.advance()))
            children.append(self.parse_expression())
        children.append(self.eat(";"))
        return SyntaxNode("assert_statement", children)

    # -- expressions -----------------------------------------------------------

    def parse_expression(self) -> SyntaxNode:
        return self.parse_assignment()

    def parse_assignment(self) -> SyntaxNode:
        left = self.parse_ternary()
        tok = self.peek()
        if tok.kind == "op" and tok.text in _ASSIGN_OPS:
            op = _anon(self.advance())
            right = self.parse_assignment()
            return SyntaxNode("assignment_expression", [left, op, right])
        return left

    def parse_ternary(self) -> SyntaxNode:
        cond = self.parse_lambda_or_binary()
        if self.at("?"):
            q = _anon(self.advance())
            then = self.parse_expression()
            colon = self.eat(":")
            alt = self.parse_ternary()
            return SyntaxNode("ternary_expression", [cond, q, then, colon, alt])
        return cond

    def parse_lambda_or_binary(self) -> SyntaxNode:
        if self.at_ident() and self.peek(1).text == "->":
            param = self._ident_anchor()
            arrow = _anon(self.advance())
            return SyntaxNode(
                "lambda_expression", [param, arrow, self.parse_lambda_body()]
            )
        if self.at("(") and self._paren_starts_lambda():
            return self.parse_paren_lambda()
        return self.parse_binary(0)

    def _paren_starts_lambda(self) -> bool:
        depth = 0
        j = self.i
        while j < len(self.toks):
            text = self.toks[j].text
            if text == "(":
                depth += 1
            elif text == ")":
                depth -= 1
                if depth == 0:
                    nxt = self.toks[j + 1] if j + 1 < len(self.toks) else None
                    return nxt is not None and nxt.text == "->"
            j += 1
        return False

    def parse_paren_lambda(self) -> SyntaxNode:
        params = [self.eat("(")]
        if not self.at(")"):
            while True:
                saved = self.i
                try:
                    params.append(self.parse_formal_parameter())
                except JavaSyntaxError:
                    self.i = saved
                    params.append(self._ident_anchor())
                if self.at(","):
                    params.append(_anon(self.advance()))
                    continue
                break
        params.append(self.eat(")"))
        param_node = SyntaxNode("inferred_parameters", params)
        arrow = self.eat("->")
        return SyntaxNode("lambda_expression", [param_node, arrow, self.parse_lambda_body()])

    def parse_lambda_body(self) -> SyntaxNode:
        if self.at("{"):
            return self.parse_block()
        return self.parse_expression()

    def parse_binary(self, level: int) -> SyntaxNode:
        if level >= len(_BINARY_LEVELS):
            return self.parse_unary()
        ops = _BINARY_LEVELS[level]
        node = self.parse_binary(level + 1)
        while True:
            tok = self.peek()
            if "<" in ops and tok.kind == "keyword" and tok.text == "instanceof":
                kw = _anon(self.advance())
                children = [node, kw, self.parse_type()]
                if self.at_ident():
                    children.append(self._ident_anchor())
                node = SyntaxNode("instanceof_expression", children)
                continue
            if tok.kind == "op" and tok.text in ops:
                op = _anon(self.advance())
                right = self.parse_binary(level + 1)
                node = SyntaxNode("binary_expression", [node, op, right])
                continue
            return node

    def parse_unary(self) -> SyntaxNode:
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("+", "-", "!", "~"):
            op = _anon(self.advance())
            return SyntaxNode("unary_expression", [op, self.parse_unary()])
        if tok.kind == "op" and tok.text in ("++", "--"):
            op = _anon(self.advance())
            return SyntaxNode("update_expression", [op, self.parse_unary()])
        if tok.kind == "op" and tok.text == "(":
            cast = self.try_parse_cast()
            if cast is not None:
                return cast
        return self.parse_postfix()

    def try_parse_cast(self) -> SyntaxNode | None:
        saved = self.i
        try:
            open_paren = _anon(self.advance())
            cast_type = self.parse_type()
            extra: list[SyntaxNode] = []
            while self.at("&"):
                extra.append(_anon(self.advance()))
                extra.append(self.parse_type())
            close = self.eat(")")
        except JavaSyntaxError:
            self.i = saved
            return None
        nxt = self.peek()
        plausible = (
            nxt.kind in _CAST_FOLLOW_KINDS
            or (nxt.kind == "op" and nxt.text in _CAST_FOLLOW_OPS)
            or (nxt.kind == "keyword" and nxt.text in _CAST_FOLLOW_WORDS)
        )
        if not plausible:
            self.i = saved
            return None
        operand = self.parse_unary()
        children = [open_paren, cast_type] + extra + [close, operand]
        return SyntaxNode("cast_expression", children)

    def parse_postfix(self) -> SyntaxNode:
        node = self.parse_primary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == ".":
                node = self.parse_member_suffix(node)
                continue
            if tok.kind == "op" and tok.text == "(":
                node = SyntaxNode(
                    "method_invocation", [node, self.parse_argument_list()]
                )
                continue
            if tok.kind == "op" and tok.text == "[":
                if self.peek(1).text == "]":
                    # Array class literal: Foo[].class
                    self.advance()
                    self.advance()
                    while self.at("[") and self.peek(1).text == "]":
                        self.advance()
                        self.advance()
                    dot = self.eat(".")
                    kw = self.eat("class")
                    return SyntaxNode("class_literal", [node, dot, kw])
                open_bracket = _anon(self.advance())
                index = self.parse_expression()
                close_bracket = self.eat("]")
                node = SyntaxNode(
                    "array_access", [node, open_bracket, index, close_bracket]
                )
                continue
            if tok.kind == "op" and tok.text == "::":
                sep = _anon(self.advance())
                children = [node, sep]
                if self.at("<"):
                    children.append(self.parse_type_arguments())
                if self.at("new"):
                    children.append(_anon(self.advance()))
                else:
                    children.append(self._ident_anchor())
                node = SyntaxNode("method_reference", children)
                continue
            if tok.kind == "op" and tok.text in ("++", "--"):
                op = _anon(self.advance())
                node = SyntaxNode("update_expression", [node, op])
                continue
            return node

    def parse_member_suffix(self, node: SyntaxNode) -> SyntaxNode:
        dot = _anon(self.advance())
        if self.at("class"):
            return SyntaxNode("class_literal", [node, dot, _anon(self.advance())])
        if self.at("this"):
            self.advance()
            return SyntaxNode("field_access", [node, dot, SyntaxNode("this_expression")])
        if self.at("new"):
            # Qualified instance creation: outer.new Inner()
            kw = _anon(self.advance())
            inner = self.parse_base_type()
            args = self.parse_argument_list()
            children = [node, dot, kw, inner, args]
            if self.at("{"):
                children.append(self.parse_class_body())
            return SyntaxNode("object_creation_expression", children)
        type_args = None
        if self.at("<"):
            type_args = self.parse_type_arguments()
        name = self._ident_anchor()
        if self.at("("):
            children = [node, dot]
            if type_args:
                children.append(type_args)
            children += [name, self.parse_argument_list()]
            return SyntaxNode("method_invocation", children)
        if type_args is not None:
            raise self.error("expected a method call after explicit type arguments")
        return SyntaxNode("field_access", [node, dot, name])

    def parse_argument_list(self) -> SyntaxNode:
        children = [self.eat("(")]
        if not self.at(")"):
            while True:
                children.append(self.parse_expression())
                if self.at(","):
                    children.append(_anon(self.advance()))
                    continue
                break
        children.append(self.eat(")"))
        return SyntaxNode("argument_list", children)

    def parse_primary(self) -> SyntaxNode:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return SyntaxNode(_int_literal_kind(tok.text))
        if tok.kind == "float":
            self.advance()
            return SyntaxNode("decimal_floating_point_literal")
        if tok.kind == "string":
            self.advance()
            return SyntaxNode("string_literal")
        if tok.kind == "char":
            self.advance()
            return SyntaxNode("character_literal")
        if tok.kind == "ident":
            if tok.text in ("true", "false"):
                self.advance()
                return SyntaxNode(tok.text)
            if tok.text == "null":
                self.advance()
                return SyntaxNode("null_literal")
            self.advance()
            return SyntaxNode("identifier")
        if self.at("this"):
            self.advance()
            return SyntaxNode("this_expression")
        if self.at("super"):
            self.advance()
            return SyntaxNode("super_expression")
        if self.at("("):
            open_paren = _anon(self.advance())
            inner = self.parse_expression()
            close = self.eat(")")
            return SyntaxNode("parenthesized_expression", [open_paren, inner, close])
        if self.at("new"):
            return self.parse_creation()
        if self.at_primitive() or self.at("void"):
            base = self.parse_type()
            dot = self.eat(".")
            kw = self.eat("class")
            return SyntaxNode("class_literal", [base, dot, kw])
        if self.at("switch"):
            children = [self.eat("switch"), self.eat("(")]
            children.append(self.parse_expression())
            children.append(self.eat(")"))
            children.append(self.parse_switch_block())
            return SyntaxNode("switch_expression", children)
        raise self.error(f"unexpected token {tok.text or tok.kind!r} in expression")

    def parse_creation(self) -> SyntaxNode:
        kw = self.eat("new")
        type_args = None
        if self.at("<"):
            type_args = self.parse_type_arguments()
        base = self.parse_base_type()
        if self.at("["):
            children = [kw, base]
            saw_expr_dim = False
            while self.at("["):
                children.append(_anon(self.advance()))
                if not self.at("]"):
                    children.append(self.parse_expression())
                    saw_expr_dim = True
                children.append(self.eat("]"))
            if self.at("{"):
                children.append(self.parse_array_initializer())
            elif not saw_expr_dim:
                raise self.error("array creation needs a size or an initializer")
            return SyntaxNode("array_creation_expression", children)
        children = [kw]
        if type_args:
            children.append(type_args)
        children.append(base)
        children.append(self.parse_argument_list())
        if self.at("{"):
            children.append(self.parse_class_body())
        return SyntaxNode("object_creation_expression", children)
