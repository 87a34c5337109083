"""Possible worlds, classical satisfaction, and the linear system a formula function induces.

A world is a subset of the Herbrand base encoded as an ``int`` whose bit
``i`` says whether ``base[i]`` is true.  Sets of worlds are again ``int``
bitsets: bit ``w`` of a mask is set when world ``w`` is in the set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .errors import BudgetError
from .ground import DEFAULT_MAX_ATOMS
from .interval import FULL
from .syntax import CONJ, Atom, BasicFormula

World = int


def enumerate_worlds(base_size: int, max_atoms: int = DEFAULT_MAX_ATOMS) -> range:
    if base_size > max_atoms:
        raise BudgetError(f"{base_size} atoms exceed the budget of {max_atoms}")
    return range(1 << base_size)


def world_atoms(world: World, base: Sequence[Atom]) -> frozenset[Atom]:
    return frozenset(a for i, a in enumerate(base) if world >> i & 1)


@lru_cache(maxsize=None)
def atom_masks(n: int) -> tuple[int, ...]:
    """Mask of worlds containing atom ``i``, for each ``i < n``."""
    masks = []
    for i in range(n):
        half = 1 << i
        # 2**i zeros then 2**i ones, repeated to cover 2**n worlds
        mask = ((1 << half) - 1) << half
        width = half << 1
        while width < (1 << n):
            mask |= mask << width
            width <<= 1
        masks.append(mask)
    return tuple(masks)


def all_worlds_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


def satisfies(world: World, formula: BasicFormula, index: Mapping[Atom, int]) -> bool:
    bits = (world >> index[a] & 1 for a in formula.atoms)
    return all(bits) if formula.connective == CONJ else any(bits)


def formula_mask(formula: BasicFormula, index: Mapping[Atom, int], n: int) -> int:
    masks = atom_masks(n)
    if formula.connective == CONJ:
        mask = all_worlds_mask(n)
        for a in formula.atoms:
            mask &= masks[index[a]]
    else:
        mask = 0
        for a in formula.atoms:
            mask |= masks[index[a]]
    return mask


@dataclass(frozen=True)
class Row:
    mask: int
    lower: Optional[Fraction]
    upper: Optional[Fraction]
    label: str = ""


@dataclass(frozen=True)
class ConstraintSystem:
    """Rows ``lower <= sum(p_w for w in mask) <= upper``; ``p_w >= 0`` implied.

    ``rows[0]`` is always the normalization row.
    """

    nvars: int
    rows: tuple[Row, ...]

    @classmethod
    def normalized(cls, nvars: int, rows: Iterable[Row] = ()) -> ConstraintSystem:
        norm = Row((1 << nvars) - 1, Fraction(1), Fraction(1), "sum")
        return cls(nvars, (norm, *rows))

    def satisfied_by(self, witness: Mapping[World, Fraction]) -> bool:
        if any(p < 0 for p in witness.values()):
            return False
        for row in self.rows:
            total = sum(p for w, p in witness.items() if row.mask >> w & 1)
            if row.lower is not None and total < row.lower:
                return False
            if row.upper is not None and total > row.upper:
                return False
        return True


def build_constraints(h, base: Sequence[Atom]) -> ConstraintSystem:
    """Linear constraints on world probabilities implied by ``h`` over ``base``."""
    n = len(base)
    index = {a: i for i, a in enumerate(base)}
    rows = []
    for f, value in zip(h.formulas, h.values):
        if value == FULL:
            continue
        mask = formula_mask(f, index, n)
        if value.is_empty:
            rows.append(Row(mask, Fraction(1), Fraction(0), str(f)))
        else:
            rows.append(Row(mask, value.lo, value.hi, str(f)))
    return ConstraintSystem.normalized(1 << n, rows)
