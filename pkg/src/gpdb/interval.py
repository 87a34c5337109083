"""Exact closed sub-intervals of [0, 1] and annotation evaluation.

All endpoints are :class:`fractions.Fraction`.  Any interval with ``lo > hi``
collapses to the canonical :data:`EMPTY` value so that structural equality
is set equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import UnboundVariableError
from .syntax import Annotation, Const, Func, Item, Var

ZERO = Fraction(0)
ONE = Fraction(1)

Binding = Mapping[str, Fraction]


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            lo, hi = ONE, ZERO
        elif lo < 0 or hi > 1:
            raise ValueError(f"interval [{lo}, {hi}] is not inside [0, 1]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __str__(self):
        if self.is_empty:
            return "empty"
        return f"[{_fmt(self.lo)}, {_fmt(self.hi)}]"

    def to_json(self):
        if self.is_empty:
            return "empty"
        return [_fmt(self.lo), _fmt(self.hi)]


EMPTY = Interval(ONE, ZERO)
FULL = Interval(ZERO, ONE)


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def intersect(a: Interval, b: Interval) -> Interval:
    if a.is_empty or b.is_empty:
        return EMPTY
    return Interval(max(a.lo, b.lo), min(a.hi, b.hi))


def is_subset(a: Interval, b: Interval) -> bool:
    if a.is_empty:
        return True
    if b.is_empty:
        return False
    return b.lo <= a.lo and a.hi <= b.hi


# Built-in annotation functions, each totalized into [0, 1].
def _div(x, y):
    if y == 0:
        return ONE
    return min(ONE, x / y)


FUNCTIONS = {
    "mul": lambda x, y: x * y,
    "div": _div,
    "add": lambda x, y: min(ONE, x + y),
    "sub": lambda x, y: max(ZERO, x - y),
    "min": lambda *xs: min(xs),
    "max": lambda *xs: max(xs),
}


def eval_item(item: Item, binding: Binding) -> Fraction:
    if isinstance(item, Const):
        return item.value
    if isinstance(item, Var):
        try:
            return Fraction(binding[item.name])
        except KeyError:
            raise UnboundVariableError(f"annotation variable {item.name} is unbound") from None
    if isinstance(item, Func):
        value = FUNCTIONS[item.name](*(eval_item(arg, binding) for arg in item.args))
        # guards user-supplied bindings outside [0, 1]
        return min(ONE, max(ZERO, value))
    raise TypeError(f"not an annotation item: {item!r}")


def eval_annotation(ann: Annotation, binding: Binding | None = None) -> Interval:
    """Evaluate both endpoints of ``ann`` under ``binding``.

    >>> from gpdb.syntax import parse_annotation
    >>> str(eval_annotation(parse_annotation("[0.5 * V1, 0.5 * V1]"), {"V1": Fraction(4, 5)}))
    '[2/5, 2/5]'
    """
    binding = binding or {}
    return Interval(eval_item(ann.lo, binding), eval_item(ann.hi, binding))
