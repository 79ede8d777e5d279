"""Convex subsets of the real line with exact rational bounds.

A :class:`ConvexSet` is the weight of every difference constraint handled by
the temporal solver: ``(Y - X) in S``.  Bounds carry a strictness flag so that
open and closed endpoints survive addition and intersection exactly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

INF = math.inf
NEG_INF = -math.inf

Value = Union[Fraction, float]  # float only for +/-inf


def _as_value(x) -> Value:
    if isinstance(x, float) and math.isinf(x):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class Bound:
    value: Value
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "value", _as_value(self.value))
        if math.isinf(self.value) and not self.strict:
            # infinity is never attained
            object.__setattr__(self, "strict", True)

    @property
    def finite(self) -> bool:
        return not math.isinf(self.value)


@dataclass(frozen=True)
class ConvexSet:
    """A convex subset of the reals: ``lo .. hi`` with per-side strictness.

    Build instances through :func:`interval` (or the module constants) so that
    empty sets collapse to the canonical :data:`EMPTY`.
    """

    lo: Bound
    hi: Bound

    @property
    def is_empty(self) -> bool:
        return self is EMPTY or _empty(self.lo, self.hi)

    def __contains__(self, x) -> bool:
        if self.is_empty:
            return False
        x = Fraction(x)
        lo, hi = self.lo, self.hi
        if x < lo.value or (x == lo.value and lo.strict):
            return False
        if x > hi.value or (x == hi.value and hi.strict):
            return False
        return True

    def __and__(self, other: "ConvexSet") -> "ConvexSet":
        return intersect(self, other)

    def __add__(self, other: "ConvexSet") -> "ConvexSet":
        return minkowski_sum(self, other)

    def __neg__(self) -> "ConvexSet":
        return negate(self)

    def __le__(self, other: "ConvexSet") -> bool:
        return subset_of(self, other)

    @property
    def is_point(self) -> bool:
        return not self.is_empty and self.lo.value == self.hi.value

    @property
    def is_universal(self) -> bool:
        return not self.lo.finite and not self.hi.finite and self.lo.value < 0 < self.hi.value

    def __str__(self) -> str:
        return format_convex(self)

    def __repr__(self) -> str:
        return f"ConvexSet({format_convex(self)})"


def _empty(lo: Bound, hi: Bound) -> bool:
    if lo.value > hi.value:
        return True
    if lo.value == hi.value:
        return lo.strict or hi.strict
    return False


EMPTY = ConvexSet(Bound(INF), Bound(NEG_INF))


def interval(lo, hi, lo_strict: bool = False, hi_strict: bool = False) -> ConvexSet:
    """Canonical constructor; returns :data:`EMPTY` for empty bounds."""
    lo_b, hi_b = Bound(lo, lo_strict), Bound(hi, hi_strict)
    if _empty(lo_b, hi_b):
        return EMPTY
    return ConvexSet(lo_b, hi_b)


REALS = interval(NEG_INF, INF)
ZERO = interval(0, 0)
POSITIVE = interval(0, INF, lo_strict=True)
NEGATIVE = interval(NEG_INF, 0, hi_strict=True)
NON_NEGATIVE = interval(0, INF)
NON_POSITIVE = interval(NEG_INF, 0)


def point(x) -> ConvexSet:
    return interval(x, x)


def _tighter_lo(a: Bound, b: Bound) -> Bound:
    if a.value != b.value:
        return a if a.value > b.value else b
    return a if a.strict else b


def _tighter_hi(a: Bound, b: Bound) -> Bound:
    if a.value != b.value:
        return a if a.value < b.value else b
    return a if a.strict else b


def intersect(a: ConvexSet, b: ConvexSet) -> ConvexSet:
    if a.is_empty or b.is_empty:
        return EMPTY
    lo = _tighter_lo(a.lo, b.lo)
    hi = _tighter_hi(a.hi, b.hi)
    if _empty(lo, hi):
        return EMPTY
    if lo == a.lo and hi == a.hi:
        return a
    if lo == b.lo and hi == b.hi:
        return b
    return ConvexSet(lo, hi)


def _add_bounds(a: Bound, b: Bound) -> Bound:
    return Bound(a.value + b.value, a.strict or b.strict)


def minkowski_sum(a: ConvexSet, b: ConvexSet) -> ConvexSet:
    """``{x + y | x in a, y in b}``.  Both operands must be non-empty."""
    if a.is_empty or b.is_empty:
        raise ValueError("sum of an empty convex set is undefined")
    return ConvexSet(_add_bounds(a.lo, b.lo), _add_bounds(a.hi, b.hi))


def negate(a: ConvexSet) -> ConvexSet:
    if a.is_empty:
        return EMPTY
    return ConvexSet(Bound(-a.hi.value, a.hi.strict), Bound(-a.lo.value, a.lo.strict))


def subset_of(a: ConvexSet, b: ConvexSet) -> bool:
    if a.is_empty:
        return True
    if b.is_empty:
        return False
    lo_ok = a.lo.value > b.lo.value or (a.lo.value == b.lo.value and (a.lo.strict or not b.lo.strict))
    hi_ok = a.hi.value < b.hi.value or (a.hi.value == b.hi.value and (a.hi.strict or not b.hi.strict))
    return lo_ok and hi_ok


def pick(a: ConvexSet) -> Fraction:
    """A representative rational inside a non-empty set.

    Midpoint when both sides are finite, one unit inside a half-line, and 0 for
    the whole line.
    """
    if a.is_empty:
        raise ValueError("cannot pick from an empty set")
    lo, hi = a.lo, a.hi
    if lo.finite and hi.finite:
        return (lo.value + hi.value) / 2
    if lo.finite:
        return lo.value + 1
    if hi.finite:
        return hi.value - 1
    return Fraction(0)


# -- textual form ---------------------------------------------------------

def format_value(v: Value) -> str:
    if isinstance(v, float):
        return "+inf" if v > 0 else "-inf"
    return str(v)


def format_convex(a: ConvexSet) -> str:
    if a.is_empty:
        return "{}"
    left = "(" if a.lo.strict else "["
    right = ")" if a.hi.strict else "]"
    return f"{left}{format_value(a.lo.value)},{format_value(a.hi.value)}{right}"


_RAT = r"[+-]?\d+(?:/\d+)?|[+-]inf"
_CONVEX_RE = re.compile(
    rf"^\s*([\[(])\s*({_RAT})\s*,\s*({_RAT})\s*([\])])\s*$"
)


def parse_value(text: str) -> Value:
    text = text.strip()
    if text in ("+inf", "inf"):
        return INF
    if text == "-inf":
        return NEG_INF
    if not re.fullmatch(r"[+-]?\d+(?:/\d+)?", text):
        raise ValueError(f"not a rational: {text!r}")
    if text.endswith("/0"):
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(text)


def parse_convex(text: str) -> ConvexSet:
    """Parse ``[a,b]``, ``(a,b)``, ``[a,b)``, ``(a,b]`` or ``{0}``."""
    if re.fullmatch(r"\s*\{\s*0\s*\}\s*", text):
        return ZERO
    m = _CONVEX_RE.match(text)
    if not m:
        raise ValueError(f"malformed convex set: {text!r}")
    left, lo, hi, right = m.groups()
    return interval(parse_value(lo), parse_value(hi), left == "(", right == ")")
