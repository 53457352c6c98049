"""Runtime values for the matchmaking expression language.

A Value is a small tagged union: integer, real, boolean, text, undefined,
or error.  UNDEFINED is a first-class citizen (missing attributes evaluate
to it) and ERROR carries a diagnostic message instead of raising.
"""
from __future__ import annotations

from dataclasses import dataclass

INT = "integer"
REAL = "real"
BOOL = "boolean"
TEXT = "text"
UNDEFINED = "undefined"
ERROR = "error"

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class Value:
    kind: str
    payload: object = None

    def is_true(self) -> bool:
        return self.kind == BOOL and self.payload is True

    def is_numeric(self) -> bool:
        return self.kind in (INT, REAL)

    def is_undefined(self) -> bool:
        return self.kind == UNDEFINED

    def is_error(self) -> bool:
        return self.kind == ERROR

    def __repr__(self) -> str:
        if self.kind in (UNDEFINED,):
            return "Value(undefined)"
        return f"Value({self.kind}, {self.payload!r})"


def integer(n: int) -> Value:
    if not (INT64_MIN <= n <= INT64_MAX):
        raise ValueError(f"integer out of 64-bit range: {n}")
    return Value(INT, int(n))


def real(x: float) -> Value:
    return Value(REAL, float(x))


def boolean(b: bool) -> Value:
    return TRUE if b else FALSE


def text(s: str) -> Value:
    return Value(TEXT, s)


def error(message: str) -> Value:
    if not message:
        raise ValueError("error value needs a non-empty message")
    return Value(ERROR, message)


UNDEF = Value(UNDEFINED)
TRUE = Value(BOOL, True)
FALSE = Value(BOOL, False)
