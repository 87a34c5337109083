from fractions import Fraction

from gpdb import FormulaFunction, Interval
from gpdb.interval import EMPTY
from gpdb.syntax import parse_formula


def iv(lo, hi=None):
    if lo == "empty":
        return EMPTY
    return Interval(Fraction(lo), Fraction(lo if hi is None else hi))


def fn(g, values=None, **simple):
    """A formula function over ``g.tracked`` from formula text to interval."""
    mapping = {parse_formula(k): v for k, v in {**(values or {}), **simple}.items()}
    return FormulaFunction.from_mapping(g.tracked, mapping)


def by_name(h):
    return {str(f): v for f, v in h.items()}
