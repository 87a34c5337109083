"""Seeded generators for random propositional programs and formula functions.

Annotation variables only appear in point patterns ``[V, V]`` in bodies, so
each binding is a function of a single interval.
"""

import random
from fractions import Fraction

from gpdb import FormulaFunction, Interval, ground_program, parse_program
from gpdb.interval import EMPTY, FULL

GRID = [Fraction(k, 4) for k in range(5)] + [Fraction(1, 10), Fraction(9, 10)]
HEAD_PATTERNS = ["[{v}, {v}]", "[{v}, 1]", "[0, {v}]", "[{v} * 1/2, {v}]", "[max({v}, 1/2), 1]"]


def _const_interval(rng):
    a, b = sorted(rng.sample(GRID, 2)) if rng.random() < 0.8 else [rng.choice(GRID)] * 2
    return f"[{a}, {b}]"


def _formula(rng, atoms):
    if len(atoms) > 1 and rng.random() < 0.3:
        pair = rng.sample(atoms, 2)
        return "(" + rng.choice([" ^ ", " | "]).join(pair) + ")"
    return rng.choice(atoms)


def random_program_text(rng, atoms=4, clauses=5, negation=True, max_body=2):
    names = [f"p{i}" for i in range(rng.randint(1, atoms))]
    lines = []
    for _ in range(rng.randint(1, clauses)):
        body, var = [], None
        for _ in range(rng.randint(0, max_body)):
            if var is None and rng.random() < 0.4:
                var = "V"
                body.append(f"{_formula(rng, names)} : [V, V]")
            else:
                body.append(f"{_formula(rng, names)} : {_const_interval(rng)}")
        if negation:
            for _ in range(rng.choice([0, 0, 1, 1, 2])):
                body.append(f"not({_formula(rng, names)} : {_const_interval(rng)})")
        head_ann = rng.choice(HEAD_PATTERNS).format(v=var) if var else _const_interval(rng)
        head = f"{_formula(rng, names)} : {head_ann}"
        lines.append(f"{head} <- {' & '.join(body)}." if body else f"{head}.")
    return "\n".join(lines) + "\n"


def random_ground(rng, **kw):
    return ground_program(parse_program(random_program_text(rng, **kw)))


def random_interval(rng):
    r = rng.random()
    if r < 0.1:
        return EMPTY
    if r < 0.3:
        return FULL
    a, b = sorted(rng.choice(GRID) for _ in range(2))
    return Interval(a, b)


def shrink(rng, iv):
    """A random sub-interval of ``iv`` (possibly empty)."""
    if iv.is_empty or rng.random() < 0.1:
        return EMPTY
    width = iv.hi - iv.lo
    a = rng.choice([0, Fraction(1, 4), Fraction(1, 2)])
    b = rng.choice([0, Fraction(1, 4), Fraction(1, 2)])
    if a + b > 1:
        b = 1 - a
    return Interval(iv.lo + a * width, iv.hi - b * width)


def random_function(rng, formulas):
    return FormulaFunction(tuple(formulas), tuple(random_interval(rng) for _ in formulas))


def shrink_function(rng, h):
    return FormulaFunction(h.formulas, tuple(shrink(rng, v) for v in h.values))


def random_system(rng, max_atoms=3, max_rows=3):
    """``(nvars, rows, objectives)`` with rows as ``(mask, lo, hi)`` over arbitrary world sets."""
    nvars = 1 << rng.randint(1, max_atoms)
    full = (1 << nvars) - 1
    rows = []
    for _ in range(rng.randint(0, max_rows)):
        mask = rng.randint(1, full)
        kind = rng.random()
        lo, hi = sorted(rng.choice(GRID) for _ in range(2))
        if kind < 0.1:
            lo, hi = Fraction(1), Fraction(0)  # the encoding of an empty value
        elif kind < 0.25:
            hi = lo
        rows.append((mask, lo, hi))
    objectives = [rng.randint(1, full) for _ in range(rng.randint(1, 3))]
    return nvars, rows, objectives


def seeded(seed):
    return random.Random(seed)
