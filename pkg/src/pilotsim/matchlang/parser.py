"""Parser for the attribute-ad expression language.

Grammar (EBNF, lowest precedence first; see also docs/expression-grammar.md):

    expr        = or_expr ;
    or_expr     = and_expr , { "||" , and_expr } ;
    and_expr    = not_expr , { "&&" , not_expr } ;
    not_expr    = "!" , not_expr | comparison ;
    comparison  = additive , { ( "<" | "<=" | ">" | ">=" | "==" | "!=" ) , additive } ;
    additive    = term , { ( "+" | "-" ) , term } ;
    term        = unary , { ( "*" | "/" | "%" ) , unary } ;
    unary       = "-" , unary | primary ;
    primary     = NUMBER | STRING | "true" | "false" | "undefined" | "error"
                | function , "(" , expr , { "," , expr } , ")"
                | ( "self" | "target" ) , "." , IDENT
                | IDENT
                | "(" , expr , ")" ;
    function    = "min" | "max" | "abs" | "floor" | "ceil" | "isUndefined" ;

Notes:
  * NOT binds looser than comparisons (Python-style: "!a == b" is "!(a == b)")
    while unary minus binds tightest.
  * Identifiers, keywords and function names are case-insensitive; names are
    stored lowercase.  "self", "target", "true", "false", "undefined" and
    "error" are reserved words.
  * A unary minus directly in front of a numeric literal folds into a
    negative literal, so "-3" parses as the literal -3.
  * Binary operators of equal precedence associate to the left.
"""
from __future__ import annotations

import re

from . import values
from .exprs import SELF, TARGET, UNSCOPED, AttrRef, Binary, Call, Expr, FUNCTIONS, Literal, Unary

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><=|>=|==|!=|&&|\|\||[<>+\-*/%!(),.])
    """,
    re.VERBOSE,
)

_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}

_KEYWORDS = {"true", "false", "undefined", "error", "self", "target"}


class ParseError(ValueError):
    """Syntax error with 1-based line/column of the offending token."""

    def __init__(self, message: str, line: int, column: int, token: str = ""):
        self.line = line
        self.column = column
        self.token = token
        shown = f" near {token!r}" if token else ""
        super().__init__(f"{message} at line {line}, column {column}{shown}")


class _Token:
    __slots__ = ("type", "value", "line", "col", "text")

    def __init__(self, type_, value, line, col, text):
        self.type = type_
        self.value = value
        self.line = line
        self.col = col
        self.text = text


def _unescape(raw: str, line: int, col: int) -> str:
    out = []
    i = 0
    while i < len(raw):
        ch = raw[i]
        if ch == "\\":
            if i + 1 >= len(raw) or raw[i + 1] not in _ESCAPES:
                raise ParseError("bad string escape", line, col, raw[i : i + 2])
            out.append(_ESCAPES[raw[i + 1]])
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ParseError("unexpected character", line, pos - line_start + 1, source[pos])
        col = m.start() - line_start + 1
        kind = m.lastgroup
        raw = m.group()
        if kind == "ws":
            nl = raw.count("\n")
            if nl:
                line += nl
                line_start = m.start() + raw.rindex("\n") + 1
        elif kind == "number":
            if any(c in raw for c in ".eE"):
                tokens.append(_Token("number", float(raw), line, col, raw))
            else:
                iv = int(raw)
                if iv > values.INT64_MAX:
                    raise ParseError("integer literal out of 64-bit range", line, col, raw)
                tokens.append(_Token("number", iv, line, col, raw))
        elif kind == "string":
            tokens.append(_Token("string", _unescape(raw[1:-1], line, col), line, col, raw))
        elif kind == "ident":
            tokens.append(_Token("ident", raw.lower(), line, col, raw))
        else:
            tokens.append(_Token("op", raw, line, col, raw))
        pos = m.end()
    tokens.append(_Token("eof", None, line, len(source) - line_start + 1, ""))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok.line, tok.col, tok.text)

    def expect_op(self, op: str) -> None:
        tok = self.peek()
        if tok.type == "op" and tok.value == op:
            self.advance()
            return
        raise self.fail(f"expected {op!r}")

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok.type == "op" and tok.value in ops

    # Precedence ladder, loosest first.

    def parse_expr(self) -> Expr:
        return self.parse_or()

    def parse_or(self) -> Expr:
        node = self.parse_and()
        while self.at_op("||"):
            self.advance()
            node = Binary("||", node, self.parse_and())
        return node

    def parse_and(self) -> Expr:
        node = self.parse_not()
        while self.at_op("&&"):
            self.advance()
            node = Binary("&&", node, self.parse_not())
        return node

    def parse_not(self) -> Expr:
        if self.at_op("!"):
            self.advance()
            return Unary("!", self.parse_not())
        return self.parse_comparison()

    def parse_comparison(self) -> Expr:
        node = self.parse_additive()
        while self.at_op("<", "<=", ">", ">=", "==", "!="):
            op = self.advance().value
            node = Binary(op, node, self.parse_additive())
        return node

    def parse_additive(self) -> Expr:
        node = self.parse_term()
        while self.at_op("+", "-"):
            op = self.advance().value
            node = Binary(op, node, self.parse_term())
        return node

    def parse_term(self) -> Expr:
        node = self.parse_unary()
        while self.at_op("*", "/", "%"):
            op = self.advance().value
            node = Binary(op, node, self.parse_unary())
        return node

    def parse_unary(self) -> Expr:
        if self.at_op("-"):
            self.advance()
            if self.peek().type == "number":
                tok = self.advance()
                if isinstance(tok.value, float):
                    return Literal(values.real(-tok.value))
                if -tok.value < values.INT64_MIN:
                    raise ParseError(
                        "integer literal out of 64-bit range", tok.line, tok.col, tok.text
                    )
                return Literal(values.integer(-tok.value))
            return Unary("-", self.parse_unary())
        return self.parse_primary()

    def parse_primary(self) -> Expr:
        tok = self.peek()
        if tok.type == "number":
            self.advance()
            if isinstance(tok.value, float):
                return Literal(values.real(tok.value))
            return Literal(values.integer(tok.value))
        if tok.type == "string":
            self.advance()
            return Literal(values.text(tok.value))
        if tok.type == "ident":
            return self.parse_name()
        if self.at_op("("):
            self.advance()
            node = self.parse_expr()
            self.expect_op(")")
            return node
        raise self.fail("expected an expression")

    def parse_name(self) -> Expr:
        tok = self.advance()
        name = tok.value
        if name == "true":
            return Literal(values.TRUE)
        if name == "false":
            return Literal(values.FALSE)
        if name == "undefined":
            return Literal(values.UNDEF)
        if name == "error":
            return Literal(values.error("error"))
        if name in (SELF, TARGET):
            self.expect_op(".")
            attr = self.peek()
            if attr.type != "ident":
                raise self.fail("expected an attribute name")
            self.advance()
            if attr.value in _KEYWORDS:
                raise ParseError("reserved word used as attribute", attr.line, attr.col, attr.text)
            return AttrRef(name, attr.value)
        if self.at_op("("):
            if name not in FUNCTIONS:
                raise ParseError(f"unknown function {name!r}", tok.line, tok.col, tok.text)
            self.advance()
            args = [self.parse_expr()]
            while self.at_op(","):
                self.advance()
                args.append(self.parse_expr())
            self.expect_op(")")
            lo, hi = FUNCTIONS[name]
            if len(args) < lo or (hi is not None and len(args) > hi):
                raise ParseError(
                    f"{name}() takes {lo}{'+' if hi is None else ''} argument(s)",
                    tok.line,
                    tok.col,
                    tok.text,
                )
            return Call(name, tuple(args))
        if self.at_op("."):
            raise self.fail("only self/target may be dotted")
        return AttrRef(UNSCOPED, name)


_parse_cache: dict[str, Expr] = {}


def parse(source: str) -> Expr:
    """Parse an expression; raises ParseError with line/column on bad input."""
    cached = _parse_cache.get(source)
    if cached is not None:
        return cached
    parser = _Parser(_tokenize(source))
    node = parser.parse_expr()
    tok = parser.peek()
    if tok.type != "eof":
        raise ParseError("unexpected trailing input", tok.line, tok.col, tok.text)
    if len(_parse_cache) < 65536:
        _parse_cache[source] = node
    return node
