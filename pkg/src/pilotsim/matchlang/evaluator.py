"""Three-valued evaluation of ad expressions.

Kleene logic over {TRUE, FALSE, UNDEFINED}: UNDEFINED || true is true,
UNDEFINED && false is false, otherwise UNDEFINED propagates.  Arithmetic
and comparisons involving UNDEFINED yield UNDEFINED.  Division by zero,
type mismatches and 64-bit overflow yield ERROR values, never exceptions.

Attribute references resolve against a pair of ads: SELF looks in the ad
being evaluated, TARGET in the other ad (and the perspective swaps while
evaluating the referenced attribute, as in bilateral matchmaking), and
unscoped names try self first, then target.  Missing attributes are
UNDEFINED.  Resolution depth is capped at 32, so reference cycles settle
to UNDEFINED instead of recursing forever.
"""
from __future__ import annotations

import math

from . import values
from .values import FALSE, TRUE, UNDEF, Value
from .exprs import SELF, TARGET, AttrRef, Binary, Call, Expr, Literal, Unary

DEPTH_LIMIT = 32

_TYPE_MISMATCH = values.error("type mismatch")
_DIV_BY_ZERO = values.error("division by zero")
_OVERFLOW = values.error("integer overflow")


def evaluate(expr: Expr, self_ad, target_ad=None) -> Value:
    """Evaluate expr with the given self/target ads (either may be None)."""
    return _eval(expr, self_ad, target_ad, 0)


def _eval(expr: Expr, self_ad, target_ad, depth: int) -> Value:
    if isinstance(expr, Literal):
        return expr.value
    if isinstance(expr, AttrRef):
        return _resolve(expr, self_ad, target_ad, depth)
    if isinstance(expr, Unary):
        return _unary(expr.op, _eval(expr.operand, self_ad, target_ad, depth))
    if isinstance(expr, Binary):
        left = _eval(expr.left, self_ad, target_ad, depth)
        right = _eval(expr.right, self_ad, target_ad, depth)
        return _binary(expr.op, left, right)
    if isinstance(expr, Call):
        args = [_eval(a, self_ad, target_ad, depth) for a in expr.args]
        return _call(expr.fn, args)
    raise TypeError(f"not an expression node: {expr!r}")


def _resolve(ref: AttrRef, self_ad, target_ad, depth: int) -> Value:
    if depth >= DEPTH_LIMIT:
        return UNDEF
    if ref.scope == SELF:
        owner, other = self_ad, target_ad
    elif ref.scope == TARGET:
        owner, other = target_ad, self_ad
    else:
        if self_ad is not None and self_ad.lookup(ref.name) is not None:
            owner, other = self_ad, target_ad
        elif target_ad is not None and target_ad.lookup(ref.name) is not None:
            owner, other = target_ad, self_ad
        else:
            return UNDEF
    if owner is None:
        return UNDEF
    attr_expr = owner.lookup(ref.name)
    if attr_expr is None:
        return UNDEF
    # The referenced attribute is evaluated from its owner's perspective.
    return _eval(attr_expr, owner, other, depth + 1)


def _truth(v: Value):
    # Maps a value onto the 3-valued lattice; returns None for non-booleans.
    if v.kind == values.BOOL:
        return v.payload
    if v.kind == values.UNDEFINED:
        return "u"
    if v.kind == values.ERROR:
        return "e"
    return None


def _unary(op: str, v: Value) -> Value:
    if op == "!":
        t = _truth(v)
        if t is True:
            return FALSE
        if t is False:
            return TRUE
        if t == "u":
            return UNDEF
        if t == "e":
            return v
        return _TYPE_MISMATCH
    # negation
    if v.is_error():
        return v
    if v.is_undefined():
        return UNDEF
    if v.kind == values.INT:
        n = -v.payload
        if n > values.INT64_MAX:
            return _OVERFLOW
        return Value(values.INT, n)
    if v.kind == values.REAL:
        return Value(values.REAL, -v.payload)
    return _TYPE_MISMATCH


def _checked_int(n: int) -> Value:
    if values.INT64_MIN <= n <= values.INT64_MAX:
        return Value(values.INT, n)
    return _OVERFLOW


def _binary(op: str, left: Value, right: Value) -> Value:
    if op == "&&" or op == "||":
        return _logic(op, left, right)
    if left.is_error():
        return left
    if right.is_error():
        return right
    if left.is_undefined() or right.is_undefined():
        return UNDEF
    if op in ("==", "!=", "<", "<=", ">", ">="):
        return _compare(op, left, right)
    return _arith(op, left, right)


def _logic(op: str, left: Value, right: Value) -> Value:
    lt = _truth(left)
    rt = _truth(right)
    if lt is None:
        return left if left.is_error() else _TYPE_MISMATCH
    if rt is None:
        return right if right.is_error() else _TYPE_MISMATCH
    if op == "&&":
        if lt is False or rt is False:
            return FALSE
        if lt == "e":
            return left
        if rt == "e":
            return right
        if lt == "u" or rt == "u":
            return UNDEF
        return TRUE
    if lt is True or rt is True:
        return TRUE
    if lt == "e":
        return left
    if rt == "e":
        return right
    if lt == "u" or rt == "u":
        return UNDEF
    return FALSE


def _compare(op: str, left: Value, right: Value) -> Value:
    if left.is_numeric() and right.is_numeric():
        a, b = left.payload, right.payload
    elif left.kind == values.TEXT and right.kind == values.TEXT:
        a, b = left.payload, right.payload
    elif left.kind == values.BOOL and right.kind == values.BOOL:
        if op not in ("==", "!="):
            return _TYPE_MISMATCH
        a, b = left.payload, right.payload
    else:
        return _TYPE_MISMATCH
    if op == "==":
        return TRUE if a == b else FALSE
    if op == "!=":
        return TRUE if a != b else FALSE
    if op == "<":
        return TRUE if a < b else FALSE
    if op == "<=":
        return TRUE if a <= b else FALSE
    if op == ">":
        return TRUE if a > b else FALSE
    return TRUE if a >= b else FALSE


def _arith(op: str, left: Value, right: Value) -> Value:
    if not (left.is_numeric() and right.is_numeric()):
        return _TYPE_MISMATCH
    a, b = left.payload, right.payload
    both_int = left.kind == values.INT and right.kind == values.INT
    if op == "+":
        return _checked_int(a + b) if both_int else Value(values.REAL, a + b)
    if op == "-":
        return _checked_int(a - b) if both_int else Value(values.REAL, a - b)
    if op == "*":
        return _checked_int(a * b) if both_int else Value(values.REAL, a * b)
    if op == "/":
        if b == 0:
            return _DIV_BY_ZERO
        if both_int:
            # Integer division truncates toward zero.
            q = abs(a) // abs(b)
            return _checked_int(q if (a >= 0) == (b >= 0) else -q)
        return Value(values.REAL, a / b)
    if op == "%":
        if not both_int:
            return _TYPE_MISMATCH
        if b == 0:
            return _DIV_BY_ZERO
        # C-style remainder: sign follows the dividend.
        r = abs(a) % abs(b)
        return _checked_int(r if a >= 0 else -r)
    raise ValueError(f"unknown operator {op!r}")


def _call(fn: str, args: list[Value]) -> Value:
    if fn == "isundefined":
        return TRUE if args[0].is_undefined() else FALSE
    for a in args:
        if a.is_error():
            return a
    for a in args:
        if a.is_undefined():
            return UNDEF
    if any(not a.is_numeric() for a in args):
        return _TYPE_MISMATCH
    if fn in ("min", "max"):
        pick = min if fn == "min" else max
        chosen = pick(args, key=lambda v: v.payload)
        return chosen
    x = args[0]
    if fn == "abs":
        if x.kind == values.INT:
            return _checked_int(abs(x.payload))
        return Value(values.REAL, abs(x.payload))
    if fn == "floor":
        return _checked_int(math.floor(x.payload))
    if fn == "ceil":
        return _checked_int(math.ceil(x.payload))
    raise ValueError(f"unknown function {fn!r}")
