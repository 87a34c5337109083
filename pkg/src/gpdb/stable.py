"""Stable formula functions and stable classes.

The program transform for a guess ``h`` only depends on which negated
literals ``h`` blocks, so every question here reduces to the ``2**k``
blocking vectors over the ``k`` distinct negated literals of the ground
program.  Each vector yields one candidate, the least fixpoint of its
transform; the stable-function operator maps candidates to candidates, and
its cycles on that finite set are exactly the inclusion-minimal stable
classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import BudgetError
from .fixpoint import DEFAULT_MAX_ITERS, FormulaFunction, Stats, leq, lfp
from .ground import GroundProgram
from .interval import Interval, is_subset
from .syntax import BasicFormula, GpClause

DEFAULT_MAX_NEG = 12


@dataclass(frozen=True)
class BlockingVector:
    keys: tuple[tuple[BasicFormula, Interval], ...]
    blocked: tuple[bool, ...]

    def __getitem__(self, key: tuple[BasicFormula, Interval]) -> bool:
        return self.blocked[self.keys.index(key)]

    def __str__(self):
        parts = [
            f"not({f} : {beta}) {'blocked' if b else 'open'}"
            for (f, beta), b in zip(self.keys, self.blocked)
        ]
        return "; ".join(parts)


@dataclass(frozen=True)
class StableClass:
    members: tuple[FormulaFunction, ...]

    def __post_init__(self):
        unique = sorted(set(self.members), key=lambda h: h.sort_key)
        object.__setattr__(self, "members", tuple(unique))

    def __iter__(self) -> Iterator[FormulaFunction]:
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, h):
        return h in self.members

    @property
    def sort_key(self):
        return tuple(h.sort_key for h in self.members)


def blocking_of(g: GroundProgram, h: FormulaFunction) -> BlockingVector:
    keys = g.negation_keys
    return BlockingVector(keys, tuple(is_subset(h[f], beta) for f, beta in keys))


def _kept(g: GroundProgram, blocked: Sequence[bool]) -> tuple[int, ...]:
    return tuple(
        i
        for i, ids in enumerate(g.clause_negation_ids)
        if not any(blocked[k] for k in ids)
    )


def _strip(g: GroundProgram, kept: Sequence[int]) -> GroundProgram:
    clauses = tuple(GpClause(g.clauses[i].head, g.clauses[i].positives) for i in kept)
    return GroundProgram(clauses, g.base, g.tracked)


def ff_transform(g: GroundProgram, bv: BlockingVector) -> GroundProgram:
    """Drop clauses with a blocked negated literal; strip negation from the rest."""
    if bv.keys != g.negation_keys:
        raise ValueError("blocking vector does not belong to this program")
    return _strip(g, _kept(g, bv.blocked))


class _Evaluator:
    """Caches one least fixpoint per distinct transformed program."""

    def __init__(self, g: GroundProgram, max_iters: int, stats: Optional[Stats]):
        self.g = g
        self.max_iters = max_iters
        self.stats = stats
        self._cache: dict[tuple[int, ...], FormulaFunction] = {}

    def lfp_for(self, blocked: Sequence[bool]) -> FormulaFunction:
        kept = _kept(self.g, blocked)
        h = self._cache.get(kept)
        if h is None:
            h = lfp(_strip(self.g, kept), self.max_iters, self.stats)
            self._cache[kept] = h
        return h

    def sfp(self, h: FormulaFunction) -> FormulaFunction:
        return self.lfp_for(blocking_of(self.g, h).blocked)

    def all_vectors(self, max_neg: int) -> Iterator[tuple[bool, ...]]:
        k = len(self.g.negation_keys)
        if k > max_neg:
            raise BudgetError(f"{k} distinct negated literals exceed the budget of {max_neg}")
        return itertools.product((False, True), repeat=k)


def sfp(
    g: GroundProgram,
    h: FormulaFunction,
    max_iters: int = DEFAULT_MAX_ITERS,
    stats: Optional[Stats] = None,
) -> FormulaFunction:
    """Least fixpoint of the transform of ``g`` guided by ``h``."""
    return _Evaluator(g, max_iters, stats).sfp(h)


def is_stable(g: GroundProgram, h: FormulaFunction, max_iters: int = DEFAULT_MAX_ITERS) -> bool:
    return sfp(g, h, max_iters) == h


def enumerate_stable_functions(
    g: GroundProgram,
    max_neg: int = DEFAULT_MAX_NEG,
    max_iters: int = DEFAULT_MAX_ITERS,
    stats: Optional[Stats] = None,
) -> list[FormulaFunction]:
    ev = _Evaluator(g, max_iters, stats)
    found = set()
    for blocked in ev.all_vectors(max_neg):
        candidate = ev.lfp_for(blocked)
        if blocking_of(g, candidate).blocked == blocked:
            found.add(candidate)
    return sorted(found, key=lambda h: h.sort_key)


def alternating_class(
    g: GroundProgram, max_iters: int = DEFAULT_MAX_ITERS, stats: Optional[Stats] = None
) -> StableClass:
    """Iterate the stable-function operator from bottom until it cycles."""
    ev = _Evaluator(g, max_iters, stats)
    h = FormulaFunction.bottom(g.tracked)
    seen = {h: 0}
    sequence = [h]
    while True:
        h = ev.sfp(h)
        if h in seen:
            return StableClass(tuple(sequence[seen[h]:]))
        seen[h] = len(sequence)
        sequence.append(h)


def minimal_stable_classes(
    g: GroundProgram,
    max_neg: int = DEFAULT_MAX_NEG,
    max_iters: int = DEFAULT_MAX_ITERS,
    stats: Optional[Stats] = None,
) -> list[StableClass]:
    ev = _Evaluator(g, max_iters, stats)
    nodes = {ev.lfp_for(blocked) for blocked in ev.all_vectors(max_neg)}
    succ = {h: ev.sfp(h) for h in nodes}
    classes = set()
    done = set()
    for start in sorted(nodes, key=lambda h: h.sort_key):
        path, pos = [], {}
        h = start
        while h not in done and h not in pos:
            pos[h] = len(path)
            path.append(h)
            h = succ[h]
        if h in pos:
            classes.add(StableClass(tuple(path[pos[h]:])))
        done.update(path)
    return sorted(classes, key=lambda c: c.sort_key)


def is_stable_class(
    g: GroundProgram, cls: StableClass, max_iters: int = DEFAULT_MAX_ITERS
) -> bool:
    ev = _Evaluator(g, max_iters, None)
    return len(cls) > 0 and {ev.sfp(h) for h in cls} == set(cls)


def smyth_leq(c1: StableClass, c2: StableClass) -> bool:
    return all(any(leq(a, b) for b in c2) for a in c1)


def hoare_leq(c1: StableClass, c2: StableClass) -> bool:
    return all(any(leq(a, b) for a in c1) for b in c2)


def _minimal(classes: Sequence[StableClass], order) -> list[StableClass]:
    return [c for c in classes if all(other == c or not order(other, c) for other in classes)]


def hoare_minimal(classes: Sequence[StableClass]) -> list[StableClass]:
    return _minimal(classes, hoare_leq)


def smyth_minimal(classes: Sequence[StableClass]) -> list[StableClass]:
    return _minimal(classes, smyth_leq)
