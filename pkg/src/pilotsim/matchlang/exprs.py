"""Expression AST nodes and the canonical printer.

Nodes are frozen dataclasses so structural equality works out of the box.
Operators are stored as their source tokens ("+", "&&", "==", ...), which
keeps the printer trivial.  Attribute and function names are stored
canonically lowercase.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import values
from .values import Value

# Attribute reference scopes.
SELF = "self"
TARGET = "target"
UNSCOPED = "unscoped"

# fn name -> (min arity, max arity or None for unbounded)
FUNCTIONS = {
    "min": (1, None),
    "max": (1, None),
    "abs": (1, 1),
    "floor": (1, 1),
    "ceil": (1, 1),
    "isundefined": (1, 1),
}


@dataclass(frozen=True)
class Literal:
    value: Value


@dataclass(frozen=True)
class AttrRef:
    scope: str
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "!" or "-"
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str  # one of + - * / % < <= > >= == != && ||
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple["Expr", ...]


Expr = Literal | AttrRef | Unary | Binary | Call


def _literal_text(v: Value) -> str:
    if v.kind == values.INT:
        return str(v.payload)
    if v.kind == values.REAL:
        return repr(v.payload)
    if v.kind == values.BOOL:
        return "true" if v.payload else "false"
    if v.kind == values.TEXT:
        escaped = (
            str(v.payload)
            .replace("\\", "\\\\")
            .replace('"', '\\"')
            .replace("\n", "\\n")
            .replace("\t", "\\t")
        )
        return f'"{escaped}"'
    if v.kind == values.UNDEFINED:
        return "undefined"
    if v.kind == values.ERROR:
        # Error messages have no text form; the bare keyword round-trips
        # as a generic error value.
        return "error"
    raise ValueError(f"unprintable value kind: {v.kind}")


def _operand_text(e: Expr, wrap_literal_numbers: bool = False) -> str:
    # Composite operands get parentheses in the canonical form; atoms do not.
    if isinstance(e, (Binary, Unary)):
        return f"({unparse(e)})"
    if wrap_literal_numbers and isinstance(e, Literal) and e.value.is_numeric():
        # "-(3)" keeps a negated numeric literal distinct from the negative
        # literal "-3" that the parser folds.
        return f"({unparse(e)})"
    return unparse(e)


def unparse(expr: Expr) -> str:
    """Render the canonical text form: parse(unparse(e)) == e structurally."""
    if isinstance(expr, Literal):
        return _literal_text(expr.value)
    if isinstance(expr, AttrRef):
        if expr.scope == SELF:
            return f"self.{expr.name}"
        if expr.scope == TARGET:
            return f"target.{expr.name}"
        return expr.name
    if isinstance(expr, Unary):
        wrap_nums = expr.op == "-"
        return f"{expr.op}{_operand_text(expr.operand, wrap_literal_numbers=wrap_nums)}"
    if isinstance(expr, Binary):
        return f"{_operand_text(expr.left)} {expr.op} {_operand_text(expr.right)}"
    if isinstance(expr, Call):
        return f"{expr.fn}({', '.join(unparse(a) for a in expr.args)})"
    raise TypeError(f"not an expression node: {expr!r}")
