from fractions import Fraction

import pytest

from gpdb import lp
from gpdb.fixpoint import tighten
from gpdb.interval import Interval
from gpdb.syntax import Atom, conj
from gpdb.worlds import ConstraintSystem, Row
from oracles import vertex_bounds
from randprog import random_system, seeded

Q = Fraction
A_MASK, B_MASK = 0b1010, 0b1100  # worlds are bit patterns over (a, b)


def system(nvars, rows):
    return ConstraintSystem.normalized(nvars, [Row(m, lo, hi) for m, lo, hi in rows])


def test_frechet_bounds():
    cs = system(4, [(A_MASK, Q(1, 2), Q(7, 10)), (B_MASK, Q(3, 5), Q(4, 5))])
    both = lp.Objective(A_MASK & B_MASK)
    low, high = lp.minimize(cs, both), lp.maximize(cs, both)
    assert (low.value, high.value) == (Q(1, 10), Q(7, 10))
    assert cs.satisfied_by(low.witness) and cs.satisfied_by(high.witness)


def test_unconstrained_and_forced():
    free = system(4, [])
    assert lp.bounds(free, [A_MASK]) == [(0, 1)]
    forced = system(4, [(A_MASK, Q(1), Q(1))])
    assert lp.bounds(forced, [A_MASK]) == [(1, 1)]


def test_infeasible():
    cs = system(4, [(A_MASK, 1, 1), (B_MASK, 1, 1), (A_MASK | B_MASK, 0, 0)])
    assert not lp.feasible(cs)
    assert lp.minimize(cs, lp.Objective(A_MASK)).status == lp.INFEASIBLE
    assert lp.bounds(cs, [A_MASK]) is None


def test_normalization_only_is_feasible():
    assert lp.feasible(system(8, []))


def test_partition_worlds():
    assert lp.partition_worlds(4, [A_MASK]) == [0b0101, 0b1010]
    classes = lp.partition_worlds(8, [0b11110000, 0b00111100])
    assert sorted(classes) == sorted([0b00000011, 0b00001100, 0b00110000, 0b11000000])


def _to_cs(nvars, rows):
    return ConstraintSystem.normalized(nvars, [Row(m, Q(lo), Q(hi)) for m, lo, hi in rows])


def test_agrees_with_vertex_oracle():
    rng = seeded(2024)
    infeasible = 0
    for _ in range(500):
        nvars, rows, objectives = random_system(rng)
        expected = vertex_bounds(nvars, rows, objectives)
        cs = _to_cs(nvars, rows)
        got = lp.bounds(cs, objectives)
        assert got == expected, (nvars, rows, objectives)
        assert lp.feasible(cs) == (expected is not None)
        if expected is None:
            infeasible += 1
            continue
        for mask, (lo, hi) in zip(objectives, expected):
            assert lp.minimize(cs, lp.Objective(mask)).value == lo
            assert lp.maximize(cs, lp.Objective(mask)).value == hi
            assert lo <= hi
    # the generator must exercise both outcomes
    assert 0 < infeasible < 500


def test_tightening_leaves_other_optima_unchanged():
    rng = seeded(99)
    for _ in range(100):
        nvars, rows, objectives = random_system(rng)
        cs = _to_cs(nvars, rows)
        before = lp.bounds(cs, objectives)
        if before is None:
            continue
        mask = objectives[0]
        lo, hi = before[0]
        tightened = _to_cs(nvars, rows + [(mask, lo, hi)])
        assert lp.bounds(tightened, objectives) == before


def test_witness_check_catches_bad_optimum():
    cs = system(4, [(A_MASK, Q(1, 2), Q(1, 2))])
    bad = lp.LpOutcome(lp.FEASIBLE, Q(1, 3), {0b0010: Q(1, 2), 0b0001: Q(1, 2)})
    with pytest.raises(AssertionError):
        lp._check(cs, A_MASK, bad)


def test_tighten_cache_is_keyed_by_values():
    a, b = Atom("a", ()), Atom("b", ())
    formulas = (conj(a), conj(b), conj(a, b))
    values = (Interval(Q(1, 2), Q(7, 10)), Interval(Q(3, 5), Q(4, 5)), Interval(0, 1))
    out = tighten((a, b), formulas, values)
    assert out[2] == Interval(Q(1, 10), Q(7, 10))
