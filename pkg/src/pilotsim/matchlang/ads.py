"""Attribute ads: the universal matchmaking currency.

An Ad is an ordered map of lowercase attribute names to expressions, plus a
kind tag (job, slot, entry, cache, other).  Ads serialize to a line-oriented
text form:

    [slot]
    kind = "slot"
    name = "p00001@chicago-cpu"
    cpus = 8

The text form round-trips bit-exactly: parsing then re-serializing an ad
file reproduces it byte for byte.
"""
from __future__ import annotations

from typing import Iterable, Optional

from . import values
from .evaluator import evaluate
from .exprs import AttrRef, Binary, Call, Expr, Literal, Unary, unparse
from .parser import ParseError, parse

KINDS = ("job", "slot", "entry", "cache", "other")

_RESERVED = {"true", "false", "undefined", "error", "self", "target"}

_NODE_TYPES = (Literal, AttrRef, Unary, Binary, Call)


def _to_expr(value) -> Expr:
    if isinstance(value, _NODE_TYPES):
        return value
    if isinstance(value, values.Value):
        return Literal(value)
    if isinstance(value, bool):
        return Literal(values.boolean(value))
    if isinstance(value, int):
        return Literal(values.integer(value))
    if isinstance(value, float):
        return Literal(values.real(value))
    if isinstance(value, str):
        return Literal(values.text(value))
    raise TypeError(f"cannot embed {type(value).__name__} in an ad")


class Ad:
    """Ordered attribute map with a kind tag.

    The kind is mirrored as a text attribute so constraints can select on
    it; JOB and SLOT ads are expected to define `requirements`.
    """

    __slots__ = ("kind", "_attrs", "_sig")

    def __init__(self, kind: str, name: Optional[str] = None):
        kind = kind.lower()
        if kind not in KINDS:
            raise ValueError(f"unknown ad kind: {kind!r}")
        self.kind = kind
        self._attrs: dict[str, Expr] = {}
        self._sig: Optional[str] = None
        self.set("kind", kind)
        if name is not None:
            self.set("name", name)

    def set(self, name: str, value) -> None:
        name = name.lower()
        if name in _RESERVED:
            raise ValueError(f"reserved word used as attribute: {name!r}")
        self._attrs[name] = _to_expr(value)
        self._sig = None

    def set_expr_text(self, name: str, source: str) -> None:
        self.set(name, parse(source))

    def lookup(self, name: str) -> Optional[Expr]:
        return self._attrs.get(name.lower())

    def attributes(self) -> Iterable[tuple[str, Expr]]:
        return self._attrs.items()

    @property
    def name(self) -> Optional[str]:
        expr = self._attrs.get("name")
        if isinstance(expr, Literal) and expr.value.kind == values.TEXT:
            return expr.value.payload
        return None

    def evaluate(self, name: str, target: Optional["Ad"] = None) -> values.Value:
        expr = self.lookup(name)
        if expr is None:
            return values.UNDEF
        return evaluate(expr, self, target)

    def signature(self) -> str:
        if self._sig is None:
            self._sig = ad_to_text(self)
        return self._sig

    def copy(self) -> "Ad":
        dup = Ad.__new__(Ad)
        dup.kind = self.kind
        dup._attrs = dict(self._attrs)
        dup._sig = self._sig
        return dup

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Ad)
            and self.kind == other.kind
            and list(self._attrs.items()) == list(other._attrs.items())
        )

    def __hash__(self):
        raise TypeError("Ad is mutable and unhashable; key by signature()")

    def __repr__(self) -> str:
        return f"Ad({self.kind!r}, name={self.name!r}, {len(self._attrs)} attrs)"


def ad_to_text(ad: Ad) -> str:
    lines = [f"[{ad.kind}]"]
    for name, expr in ad.attributes():
        lines.append(f"{name} = {unparse(expr)}")
    return "\n".join(lines) + "\n"


def ads_to_text(ads: Iterable[Ad]) -> str:
    return "\n".join(ad_to_text(ad) for ad in ads)


def ads_from_text(source: str) -> list[Ad]:
    ads: list[Ad] = []
    current: Optional[Ad] = None
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            kind = line[1:-1].strip().lower()
            if kind not in KINDS:
                raise ParseError(f"unknown ad kind {kind!r}", lineno, 1, line)
            current = Ad.__new__(Ad)
            current.kind = kind
            current._attrs = {}
            current._sig = None
            ads.append(current)
            continue
        if current is None:
            raise ParseError("attribute before any [kind] header", lineno, 1, line)
        name, sep, rhs = line.partition("=")
        if not sep:
            raise ParseError("expected 'name = expression'", lineno, 1, line)
        attr = name.strip().lower()
        if not attr or attr in _RESERVED:
            raise ParseError(f"bad attribute name {attr!r}", lineno, 1, line)
        if attr in current._attrs:
            raise ParseError(f"duplicate attribute {attr!r}", lineno, 1, line)
        current._attrs[attr] = parse(rhs.strip())
    return ads


def requirements_match(a: Ad, b: Ad) -> bool:
    """True iff a's requirements evaluate to Boolean true against b.

    UNDEFINED and ERROR results count as no-match; a missing requirements
    attribute never matches.
    """
    req = a.lookup("requirements")
    if req is None:
        return False
    return evaluate(req, a, b).is_true()


def symmetric_match(job: Ad, slot: Ad) -> bool:
    return requirements_match(job, slot) and requirements_match(slot, job)


def rank_value(job: Ad, candidate: Ad) -> float:
    """Numeric value of the job's rank against a candidate; non-numeric is 0."""
    rank = job.lookup("rank")
    if rank is None:
        return 0.0
    v = evaluate(rank, job, candidate)
    if v.is_numeric():
        return float(v.payload)
    return 0.0


def rank_order(job: Ad, candidates: list[Ad]) -> list[Ad]:
    """Stable sort: descending rank, ties by candidate name ascending."""
    return sorted(candidates, key=lambda c: (-rank_value(job, c), c.name or ""))
