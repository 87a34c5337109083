"""Exact two-phase primal simplex over world-probability systems.

Worlds that no row or objective can tell apart are merged into one column
before solving, so the tableau has one column per distinguishable class of
worlds rather than one per world.  A witness puts the whole mass of a class
on its lowest-numbered world.

The tableau holds integers over a shared denominator and pivots with
Bland's rule; see :mod:`gpdb._pykernels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import kernels
from .worlds import ConstraintSystem

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"

# When true every optimum is re-checked against its witness.  The test suite
# switches this on.
VERIFY = False

# Number of simplex runs (phase one and phase two each count once).
solver_calls = 0


@dataclass(frozen=True)
class Objective:
    mask: int


@dataclass(frozen=True)
class LpOutcome:
    status: str
    value: Optional[Fraction] = None
    witness: Optional[dict] = None

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE


def partition_worlds(nvars: int, masks: Sequence[int]) -> list[int]:
    """Split the worlds ``0..nvars-1`` into classes no mask distinguishes."""
    classes = [(1 << nvars) - 1]
    for mask in masks:
        refined = []
        for cls in classes:
            inside, outside = cls & mask, cls & ~mask
            if inside:
                refined.append(inside)
            if outside:
                refined.append(outside)
        classes = refined
    return sorted(classes, key=lambda cls: cls & -cls)


def _lowest_world(cls: int) -> int:
    return (cls & -cls).bit_length() - 1


class _Tableau:
    def __init__(self, cs: ConstraintSystem, classes: list[int]):
        self.classes = classes
        k = len(classes)
        cons = []  # (coefficients over classes, sense, bound)
        for row in cs.rows:
            inside = [1 if cls & row.mask else 0 for cls in classes]
            lo, hi = row.lower, row.upper
            if lo is not None and hi is not None and lo == hi:
                cons.append((inside, "=", lo))
                continue
            if lo is not None and lo > 0:
                cons.append((inside, ">=", lo))
            if hi is not None and hi < 1:
                cons.append((inside, "<=", hi))
        nslack = sum(1 for _, sense, _ in cons if sense != "=")
        nart = sum(1 for _, sense, _ in cons if sense != "<=")
        self.n_real = k + nslack
        width = k + nslack + nart + 1
        rows, basis, art_rows = [], [], []
        s_col, a_col = k, k + nslack
        for coefs, sense, q in cons:
            q = Fraction(q)
            scale = q.denominator
            row = [c * scale for c in coefs] + [0] * (width - k)
            row[-1] = q.numerator
            if sense == "<=":
                row[s_col] = 1
                basis.append(s_col)
                s_col += 1
            else:
                if sense == ">=":
                    row[s_col] = -1
                    s_col += 1
                row[a_col] = 1
                basis.append(a_col)
                art_rows.append(len(rows))
                a_col += 1
            rows.append(row)
        self.rows = rows
        self.basis = basis
        self.d = 1
        self.art_rows = art_rows
        self.feasible = self._phase_one()

    def _run(self, rows, obj_row, ncols, d):
        global solver_calls
        solver_calls += 1
        allrows = rows + [obj_row]
        m = len(rows)
        while True:
            c = kernels.entering(obj_row, ncols)
            if c < 0:
                return d
            r = kernels.leaving(rows, m, c, self.basis)
            if r < 0:
                raise ArithmeticError("unbounded objective over the probability simplex")
            d = kernels.pivot(allrows, r, c, d)
            self.basis[r] = c

    def _phase_one(self) -> bool:
        rows = self.rows
        if not self.art_rows:
            return True
        width = len(rows[0])
        obj = [0] * width
        for i in self.art_rows:
            for j, v in enumerate(rows[i]):
                obj[j] -= v
        for j in range(self.n_real, width - 1):
            obj[j] = 0
        self.d = self._run(rows, obj, width - 1, self.d)
        if obj[-1] != 0:
            return False
        # drive zero-level artificials out of the basis; drop redundant rows
        keep = []
        for i, b in enumerate(self.basis):
            if b >= self.n_real:
                row = rows[i]
                j = next((j for j in range(self.n_real) if row[j] != 0), -1)
                if j < 0:
                    continue
                self.d = kernels.pivot(rows, i, j, self.d)
                self.basis[i] = j
            keep.append(i)
        self.rows = [rows[i][: self.n_real] + [rows[i][-1]] for i in keep]
        self.basis = [self.basis[i] for i in keep]
        return True

    def optimize(self, costs: list[int]) -> tuple[Fraction, dict]:
        """Minimize ``costs . x`` over structural columns from the phase-one basis."""
        rows = [r[:] for r in self.rows]
        saved_basis = self.basis[:]
        d = self.d
        width = self.n_real + 1
        full = costs + [0] * (width - len(costs))
        obj = [d * c for c in full]
        for i, b in enumerate(self.basis):
            cb = full[b] if b < len(costs) else 0
            if cb:
                row = rows[i]
                for j in range(width):
                    obj[j] -= cb * row[j]
        d = self._run(rows, obj, width - 1, d)
        value = Fraction(-obj[-1], d)
        witness = {}
        for i, b in enumerate(self.basis):
            if b < len(self.classes) and rows[i][-1] != 0:
                witness[_lowest_world(self.classes[b])] = Fraction(rows[i][-1], d)
        self.basis = saved_basis
        return value, witness


def _solve_bounds(cs: ConstraintSystem, masks: Sequence[int], want_min=True, want_max=True):
    classes = partition_worlds(cs.nvars, [r.mask for r in cs.rows] + list(masks))
    tab = _Tableau(cs, classes)
    if not tab.feasible:
        return None
    out = []
    for mask in masks:
        costs = [1 if cls & mask else 0 for cls in classes]
        lo = hi = None
        if want_min:
            lo = tab.optimize(costs)
        if want_max:
            value, witness = tab.optimize([-c for c in costs])
            hi = (-value, witness)
        out.append((lo, hi))
    return out


def _check(cs: ConstraintSystem, mask: int, outcome: LpOutcome):
    assert cs.satisfied_by(outcome.witness), "witness violates the constraint system"
    total = sum(p for w, p in outcome.witness.items() if mask >> w & 1)
    assert total == outcome.value, f"witness gives {total}, optimum claims {outcome.value}"


def _optimize(cs: ConstraintSystem, obj: Objective, sense: str) -> LpOutcome:
    result = _solve_bounds(cs, [obj.mask], sense == "min", sense == "max")
    if result is None:
        return LpOutcome(INFEASIBLE)
    lo, hi = result[0]
    value, witness = lo if sense == "min" else hi
    outcome = LpOutcome(FEASIBLE, value, witness)
    if VERIFY:
        _check(cs, obj.mask, outcome)
    return outcome


def minimize(cs: ConstraintSystem, obj: Objective) -> LpOutcome:
    return _optimize(cs, obj, "min")


def maximize(cs: ConstraintSystem, obj: Objective) -> LpOutcome:
    return _optimize(cs, obj, "max")


def feasible(cs: ConstraintSystem) -> bool:
    classes = partition_worlds(cs.nvars, [r.mask for r in cs.rows])
    return _Tableau(cs, classes).feasible


def bounds(cs: ConstraintSystem, masks: Sequence[int]) -> Optional[list[tuple[Fraction, Fraction]]]:
    """``[min, max]`` of each world-sum objective, or ``None`` if ``cs`` is infeasible.

    Phase one runs once; every objective starts phase two from its basis.
    """
    result = _solve_bounds(cs, masks)
    if result is None:
        return None
    out = []
    for mask, ((lo, lo_w), (hi, hi_w)) in zip(masks, result):
        if VERIFY:
            _check(cs, mask, LpOutcome(FEASIBLE, lo, lo_w))
            _check(cs, mask, LpOutcome(FEASIBLE, hi, hi_w))
        out.append((lo, hi))
    return out
