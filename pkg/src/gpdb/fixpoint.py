"""Formula functions, the one-step and LP-tightened consequence operators,
and least-fixpoint iteration."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Optional

from . import lp
from .errors import DivergenceError, NegationError
from .ground import GroundProgram
from .interval import EMPTY, FULL, Interval, eval_annotation, intersect, is_subset
from .syntax import Atom, BasicFormula, GpClause, Var
from .worlds import build_constraints, formula_mask

DEFAULT_MAX_ITERS = 1000


@dataclass(frozen=True)
class FormulaFunction:
    """Intervals for a fixed, ordered set of tracked formulas.

    Formulas outside the tracked set implicitly map to ``[0, 1]``.
    """

    formulas: tuple[BasicFormula, ...]
    values: tuple[Interval, ...]

    def __post_init__(self):
        if len(self.formulas) != len(self.values):
            raise ValueError("formulas and values differ in length")

    @classmethod
    def bottom(cls, formulas: Iterable[BasicFormula]) -> FormulaFunction:
        formulas = tuple(formulas)
        return cls(formulas, (FULL,) * len(formulas))

    @classmethod
    def top(cls, formulas: Iterable[BasicFormula]) -> FormulaFunction:
        formulas = tuple(formulas)
        return cls(formulas, (EMPTY,) * len(formulas))

    @classmethod
    def from_mapping(
        cls, formulas: Iterable[BasicFormula], mapping: Mapping[BasicFormula, Interval]
    ) -> FormulaFunction:
        formulas = tuple(formulas)
        unknown = set(mapping) - set(formulas)
        if unknown:
            raise KeyError(f"untracked formulas: {sorted(map(str, unknown))}")
        return cls(formulas, tuple(mapping.get(f, FULL) for f in formulas))

    @cached_property
    def _index(self) -> dict[BasicFormula, int]:
        return {f: i for i, f in enumerate(self.formulas)}

    def __getitem__(self, formula: BasicFormula) -> Interval:
        i = self._index.get(formula)
        return FULL if i is None else self.values[i]

    def items(self):
        return zip(self.formulas, self.values)

    @property
    def sort_key(self):
        return tuple((v.is_empty, v.lo, v.hi) for v in self.values)

    def to_json(self) -> dict:
        return {str(f): v.to_json() for f, v in self.items()}

    def __str__(self):
        return "{" + ", ".join(f"{f}: {v}" for f, v in self.items()) + "}"


def leq(h1: FormulaFunction, h2: FormulaFunction) -> bool:
    """``h1 <= h2``: every interval of ``h2`` lies inside the one of ``h1``."""
    if h1.formulas != h2.formulas:
        raise ValueError("formula functions are over different tracked sets")
    return all(is_subset(b, a) for a, b in zip(h1.values, h2.values))


@dataclass
class Stats:
    iterations: int = 0
    lfp_runs: int = 0
    lp_calls_start: int = field(default_factory=lambda: lp.solver_calls)

    @property
    def lp_calls(self) -> int:
        return lp.solver_calls - self.lp_calls_start


def clause_contribution(
    clause: GpClause, h: FormulaFunction, negation_aware: bool = True
) -> Optional[Interval]:
    """The head interval a ground clause contributes under ``h``, or ``None`` if it does not fire.

    A bare annotation variable binds to the matching endpoint of its
    literal's current interval; a variable used at both ends therefore needs
    a point interval.  Other items are evaluated and checked by containment.
    """
    if negation_aware:
        for lit in clause.negatives:
            if is_subset(h[lit.formula], eval_annotation(lit.annotation)):
                return None
    binding = {}
    for lit in clause.positives:
        value = h[lit.formula]
        ann = lit.annotation
        if value.is_empty:
            if ann.variables:
                return EMPTY
            continue
        for item, end in ((ann.lo, value.lo), (ann.hi, value.hi)):
            if isinstance(item, Var) and binding.setdefault(item.name, end) != end:
                return None
    for lit in clause.positives:
        if not is_subset(h[lit.formula], eval_annotation(lit.annotation, binding)):
            return None
    return eval_annotation(clause.head.annotation, binding)


def sp_step(g: GroundProgram, h: FormulaFunction, negation_aware: bool = True) -> FormulaFunction:
    out = dict.fromkeys(h.formulas, FULL)
    for clause in g.clauses:
        alpha = clause_contribution(clause, h, negation_aware)
        if alpha is not None:
            f = clause.head.formula
            out[f] = intersect(out.get(f, FULL), alpha)
    return FormulaFunction(h.formulas, tuple(out[f] for f in h.formulas))


@lru_cache(maxsize=256)
def _masks(base: tuple[Atom, ...], formulas: tuple[BasicFormula, ...]) -> tuple[int, ...]:
    index = {a: i for i, a in enumerate(base)}
    return tuple(formula_mask(f, index, len(base)) for f in formulas)


@lru_cache(maxsize=8192)
def tighten(
    base: tuple[Atom, ...], formulas: tuple[BasicFormula, ...], values: tuple[Interval, ...]
) -> tuple[Interval, ...]:
    """Exact LP bounds of every formula given ``values``; all EMPTY if those are inconsistent."""
    cs = build_constraints(FormulaFunction(formulas, values), base)
    result = lp.bounds(cs, _masks(base, formulas))
    if result is None:
        return (EMPTY,) * len(formulas)
    return tuple(Interval(lo, hi) for lo, hi in result)


def tp_step(g: GroundProgram, h: FormulaFunction, negation_aware: bool = True) -> FormulaFunction:
    s = sp_step(g, h, negation_aware)
    return FormulaFunction(h.formulas, tighten(g.base, h.formulas, s.values))


def lfp(
    g: GroundProgram, max_iters: int = DEFAULT_MAX_ITERS, stats: Optional[Stats] = None
) -> FormulaFunction:
    if not g.is_pf:
        raise NegationError("least fixpoint requested for a program with negation")
    h = FormulaFunction.bottom(g.tracked)
    if stats is not None:
        stats.lfp_runs += 1
    for _ in range(max_iters):
        nxt = tp_step(g, h, negation_aware=False)
        if stats is not None:
            stats.iterations += 1
        if nxt == h:
            return h
        if not leq(h, nxt):
            raise RuntimeError("fixpoint iteration is not increasing")
        h = nxt
    raise DivergenceError(f"no fixpoint after {max_iters} iterations")


def is_fixpoint(g: GroundProgram, h: FormulaFunction) -> bool:
    return tp_step(g, h, negation_aware=True) == h
