"""Herbrand base, grounding of object variables, and the tracked formula set."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BudgetError
from .interval import Interval, eval_annotation
from .syntax import (
    Atom,
    CONJ,
    DISJ,
    BasicFormula,
    GpClause,
    GpProgram,
    program_constants,
    program_predicates,
)

DEFAULT_MAX_ATOMS = 12


@dataclass(frozen=True)
class GroundProgram:
    clauses: tuple[GpClause, ...]
    base: tuple[Atom, ...]
    tracked: tuple[BasicFormula, ...]

    @property
    def is_pf(self) -> bool:
        return all(not c.negatives for c in self.clauses)

    @cached_property
    def atom_index(self) -> dict[Atom, int]:
        return {a: i for i, a in enumerate(self.base)}

    @cached_property
    def negation_keys(self) -> tuple[tuple[BasicFormula, Interval], ...]:
        """Distinct ``(formula, interval)`` pairs under negation, sorted."""
        keys = {
            (lit.formula, eval_annotation(lit.annotation))
            for c in self.clauses
            for lit in c.negatives
        }
        return tuple(sorted(keys, key=lambda k: (k[0].sort_key, k[1])))

    @cached_property
    def clause_negation_ids(self) -> tuple[tuple[int, ...], ...]:
        """For each clause, the positions of its negated literals in ``negation_keys``."""
        pos = {k: i for i, k in enumerate(self.negation_keys)}
        return tuple(
            tuple(pos[(lit.formula, eval_annotation(lit.annotation))] for lit in c.negatives)
            for c in self.clauses
        )

    def __len__(self):
        return len(self.clauses)


def herbrand_base(program: GpProgram, max_atoms: int = DEFAULT_MAX_ATOMS) -> tuple[Atom, ...]:
    constants = program_constants(program)
    base = []
    for pred, arity in program_predicates(program).items():
        for args in itertools.product(constants, repeat=arity):
            base.append(Atom(pred, args))
            if len(base) > max_atoms:
                raise BudgetError(
                    f"Herbrand base exceeds the atom budget of {max_atoms} "
                    f"({len(constants)} constants)"
                )
    return tuple(sorted(base))


def _clause_formulas(clauses: Iterable[GpClause]):
    for c in clauses:
        yield c.head.formula
        for lit in c.positives:
            yield lit.formula
        for lit in c.negatives:
            yield lit.formula


def _order(formulas: Iterable[BasicFormula]) -> tuple[BasicFormula, ...]:
    return tuple(sorted(set(formulas), key=lambda f: f.sort_key))


def ground_program(program: GpProgram, max_atoms: int = DEFAULT_MAX_ATOMS) -> GroundProgram:
    base = herbrand_base(program, max_atoms)
    constants = program_constants(program)
    clauses = []
    for clause in program.clauses:
        variables = clause.object_variables
        if not variables:
            clauses.append(clause)
            continue
        for values in itertools.product(constants, repeat=len(variables)):
            clauses.append(clause.substitute(dict(zip(variables, values))))
    return GroundProgram(tuple(clauses), base, _order(_clause_formulas(clauses)))


def tracked_formulas(
    g: GroundProgram, extra: Sequence[BasicFormula] = ()
) -> tuple[BasicFormula, ...]:
    index = g.atom_index
    for f in extra:
        outside = [str(a) for a in f.atoms if a not in index]
        if outside:
            raise ValueError(f"formula {f} mentions atoms outside the Herbrand base: {outside}")
    return _order([*g.tracked, *_clause_formulas(g.clauses), *extra])


def with_tracked(g: GroundProgram, extra: Sequence[BasicFormula]) -> GroundProgram:
    """Return ``g`` with ``extra`` formulas added to its tracked set."""
    return GroundProgram(g.clauses, g.base, tracked_formulas(g, extra))


def all_basic_formulas(base: Sequence[Atom]) -> list[BasicFormula]:
    """Every conjunction and disjunction of distinct atoms of ``base``; exponential, tiny bases only."""
    out = []
    for n in range(1, len(base) + 1):
        for combo in itertools.combinations(base, n):
            out.append(BasicFormula(CONJ, combo))
            if n > 1:
                out.append(BasicFormula(DISJ, combo))
    return out
