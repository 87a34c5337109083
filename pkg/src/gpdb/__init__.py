"""Probabilistic deductive databases with non-monotonic negation.

Parse a program, ground it, then ask for its least fixpoint (negation-free
programs), its stable formula functions, or its stable classes::

    from gpdb import parse_program, ground_program, enumerate_stable_functions

    g = ground_program(parse_program(open("fixtures/ex08.gp").read()))
    for h in enumerate_stable_functions(g):
        print(h)
"""

__version__ = "0.1.0"

from .errors import BudgetError, DivergenceError, GpdbError, NegationError, ParseError
from .fixpoint import FormulaFunction, is_fixpoint, leq, lfp, sp_step, tp_step
from .ground import GroundProgram, ground_program, herbrand_base, tracked_formulas, with_tracked
from .interval import EMPTY, FULL, Interval, eval_annotation, intersect, is_subset
from .stable import (
    BlockingVector,
    StableClass,
    alternating_class,
    blocking_of,
    enumerate_stable_functions,
    ff_transform,
    hoare_minimal,
    is_stable,
    minimal_stable_classes,
    sfp,
    smyth_minimal,
)
from .syntax import (
    Atom,
    BasicFormula,
    GpClause,
    GpProgram,
    canonicalize,
    parse_formula,
    parse_program,
    print_program,
)
