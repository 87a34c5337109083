from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from gpdb import FormulaFunction, Interval
from gpdb.interval import EMPTY, FULL
from gpdb.lp import feasible
from gpdb.syntax import Atom, conj, disj, parse_formula
from gpdb.worlds import (
    atom_masks,
    build_constraints,
    enumerate_worlds,
    formula_mask,
    satisfies,
    world_atoms,
)

A, B = Atom("a", ()), Atom("b", ())
BASE = (A, B)
INDEX = {A: 0, B: 1}
Q = Fraction


def test_world_counts():
    assert [sorted(map(str, world_atoms(w, BASE))) for w in enumerate_worlds(2)] == [
        [], ["a"], ["b"], ["a", "b"],
    ]
    assert len(enumerate_worlds(0)) == 1
    assert len(enumerate_worlds(3)) == 8


def test_satisfaction():
    assert satisfies(0b01, disj(A, B), INDEX)
    assert not satisfies(0b00, conj(A, B), INDEX)
    assert satisfies(0b11, conj(A, B), INDEX)


def test_atom_masks_match_direct_enumeration():
    for n in range(6):
        for i, mask in enumerate(atom_masks(n)):
            assert mask == sum(1 << w for w in range(1 << n) if w >> i & 1)


def test_single_atom_row_covers_half_the_worlds():
    for n in range(1, 7):
        base = tuple(Atom(f"p{i}", ()) for i in range(n))
        index = {a: i for i, a in enumerate(base)}
        assert bin(formula_mask(conj(base[0]), index, n)).count("1") == 2 ** (n - 1)


@given(st.integers(0, 15), st.lists(st.integers(0, 3), min_size=1, max_size=4, unique=True))
def test_conjunction_and_disjunction_laws(world, picks):
    base = tuple(Atom(f"p{i}", ()) for i in range(4))
    index = {a: i for i, a in enumerate(base)}
    atoms = [base[i] for i in picks]
    if satisfies(world, conj(*atoms), index):
        assert all(satisfies(world, conj(a), index) for a in atoms)
    if any(satisfies(world, conj(a), index) for a in atoms):
        assert satisfies(world, disj(*atoms), index)


def _h(**values):
    formulas = tuple(parse_formula(k.replace("_or_", " | ")) for k in values)
    return FormulaFunction(formulas, tuple(values.values()))


def test_inconsistent_facts():
    h = _h(a=Interval(1, 1), b=Interval(1, 1), a_or_b=Interval(0, 0))
    cs = build_constraints(h, BASE)
    assert len(cs.rows) == 4
    assert not feasible(cs)


def test_vacuous_bounds_leave_only_normalization():
    cs = build_constraints(_h(a=FULL, b=FULL), BASE)
    assert len(cs.rows) == 1
    norm = cs.rows[0]
    assert norm.mask == 0b1111 and norm.lower == norm.upper == 1
    assert feasible(cs)


def test_overlapping_bounds_are_satisfiable():
    cs = build_constraints(_h(a=Interval(Q(1, 2), Q(7, 10)), b=Interval(Q(3, 5), Q(4, 5))), BASE)
    assert len(cs.rows) == 3
    witness = {0b11: Q(1, 2), 0b10: Q(1, 10), 0b01: Q(1, 5), 0b00: Q(1, 5)}
    assert cs.satisfied_by(witness)
    assert feasible(cs)


def test_empty_value_is_infeasible():
    cs = build_constraints(_h(a=EMPTY, b=FULL), BASE)
    assert not feasible(cs)
