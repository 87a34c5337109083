"""Abstract syntax of gp-programs, the clause-language parser and printer.

A program is a list of clauses::

    % dogs bark unless they are abnormal
    bark(X) : [0.95, 1] <- dog(X) : [1, 1] & not(abn(X) : [1, 1]).
    dog(fido) : [1, 1].
    (a ^ b) : [0.5 * V1, 0.5 * V1] <- b : [V1, V1].

Identifiers starting with an uppercase letter are variables: object variables
in atom argument positions, annotation variables inside annotations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Union

from .errors import ParseError

CONJ = "conj"
DISJ = "disj"

# name -> arity (None: one or more arguments)
FUNCTION_ARITY = {"mul": 2, "div": 2, "add": 2, "sub": 2, "min": None, "max": None}


def is_variable(name: str) -> bool:
    return name[:1].isupper()


@dataclass(frozen=True, order=True)
class Atom:
    predicate: str
    args: tuple[str, ...] = ()

    def __str__(self):
        if not self.args:
            return self.predicate
        return f"{self.predicate}({', '.join(self.args)})"

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(a for a in self.args if is_variable(a))

    @property
    def is_ground(self) -> bool:
        return not self.variables

    def substitute(self, sub: dict[str, str]) -> Atom:
        return Atom(self.predicate, tuple(sub.get(a, a) for a in self.args))


@dataclass(frozen=True)
class BasicFormula:
    """A conjunction or disjunction of distinct atoms, always kept canonical.

    Atoms are sorted and deduplicated on construction, and a single atom is
    always tagged as a conjunction, so ``a ^ b``, ``b ^ a ^ b`` and so on
    compare and hash equal.
    """

    connective: str
    atoms: tuple[Atom, ...]

    def __post_init__(self):
        if self.connective not in (CONJ, DISJ):
            raise ValueError(f"unknown connective {self.connective!r}")
        atoms = tuple(sorted(set(self.atoms)))
        if not atoms:
            raise ValueError("a basic formula needs at least one atom")
        object.__setattr__(self, "atoms", atoms)
        if len(atoms) == 1:
            object.__setattr__(self, "connective", CONJ)

    def __str__(self):
        if len(self.atoms) == 1:
            return str(self.atoms[0])
        sep = " ^ " if self.connective == CONJ else " | "
        return "(" + sep.join(map(str, self.atoms)) + ")"

    @property
    def sort_key(self):
        return (len(self.atoms), self.connective, self.atoms)

    @property
    def variables(self) -> tuple[str, ...]:
        seen = dict.fromkeys(v for a in self.atoms for v in a.variables)
        return tuple(seen)

    def substitute(self, sub: dict[str, str]) -> BasicFormula:
        return BasicFormula(self.connective, tuple(a.substitute(sub) for a in self.atoms))


def conj(*atoms: Atom) -> BasicFormula:
    return BasicFormula(CONJ, atoms)


def disj(*atoms: Atom) -> BasicFormula:
    return BasicFormula(DISJ, atoms)


def canonicalize(f: BasicFormula) -> BasicFormula:
    return BasicFormula(f.connective, f.atoms)


# -- annotation items ------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Func:
    name: str
    args: tuple


Item = Union[Const, Var, Func]


def item_variables(item: Item) -> Iterator[str]:
    if isinstance(item, Var):
        yield item.name
    elif isinstance(item, Func):
        for arg in item.args:
            yield from item_variables(arg)


@dataclass(frozen=True)
class Annotation:
    lo: Item
    hi: Item

    @property
    def variables(self) -> set[str]:
        return set(item_variables(self.lo)) | set(item_variables(self.hi))

    def __str__(self):
        return f"[{format_item(self.lo)}, {format_item(self.hi)}]"


class Literal(NamedTuple):
    formula: BasicFormula
    annotation: Annotation

    def __str__(self):
        return f"{self.formula} : {self.annotation}"


@dataclass(frozen=True)
class GpClause:
    head: Literal
    positives: tuple[Literal, ...] = ()
    negatives: tuple[Literal, ...] = ()

    @property
    def object_variables(self) -> tuple[str, ...]:
        lits = (self.head, *self.positives, *self.negatives)
        seen = dict.fromkeys(v for lit in lits for v in lit.formula.variables)
        return tuple(seen)

    def substitute(self, sub: dict[str, str]) -> GpClause:
        def lit(x):
            return Literal(x.formula.substitute(sub), x.annotation)

        return GpClause(
            lit(self.head),
            tuple(map(lit, self.positives)),
            tuple(map(lit, self.negatives)),
        )

    def __str__(self):
        body = [str(x) for x in self.positives]
        body += [f"not({x})" for x in self.negatives]
        if not body:
            return f"{self.head}."
        return f"{self.head} <- {' & '.join(body)}."


@dataclass(frozen=True)
class GpProgram:
    clauses: tuple[GpClause, ...] = field(default_factory=tuple)

    @property
    def is_pf(self) -> bool:
        return all(not c.negatives for c in self.clauses)

    def __len__(self):
        return len(self.clauses)


# -- printing --------------------------------------------------------------


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_item(item: Item) -> str:
    if isinstance(item, Const):
        return format_rational(item.value)
    if isinstance(item, Var):
        return item.name
    if item.name in ("mul", "div") and len(item.args) == 2:
        left, right = item.args
        op = " * " if item.name == "mul" else " / "
        # infix is left-associative, so a nested right operand keeps call syntax
        if isinstance(right, Func):
            rtext = f"{right.name}({', '.join(map(format_item, right.args))})"
        else:
            rtext = format_item(right)
        return format_item(left) + op + rtext
    return f"{item.name}({', '.join(map(format_item, item.args))})"


def print_program(program: GpProgram) -> str:
    return "".join(f"{c}\n" for c in program.clauses)


# -- lexing ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>%[^\n]*)
  | (?P<number>\d+/\d+|\d+(?:\.\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct><-|[()\[\],:.^|&*/])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind in ("number", "ident", "punct"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# -- parsing ---------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.arity: dict[str, int] = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def at(self, text) -> bool:
        return self.tok.kind == "punct" and self.tok.text == text

    def expect(self, text) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def advance(self) -> Token:
        tok = self.tok
        self.pos += 1
        return tok

    def program(self) -> GpProgram:
        clauses = []
        while self.tok.kind != "eof":
            clauses.append(self.clause())
        return GpProgram(tuple(clauses))

    def clause(self) -> GpClause:
        start = self.tok
        head = self.annformula()
        positives, negatives = [], []
        if self.at("<-"):
            self.advance()
            if not self.at("."):
                while True:
                    neg, lit = self.literal()
                    (negatives if neg else positives).append(lit)
                    if not self.at("&"):
                        break
                    self.advance()
        self.expect(".")
        clause = GpClause(head, tuple(positives), tuple(negatives))
        self.check_clause(clause, start)
        return clause

    def check_clause(self, clause: GpClause, tok: Token):
        body_ann_vars = set()
        bare_vars = set()
        for lit in clause.positives:
            body_ann_vars |= lit.annotation.variables
            for item in (lit.annotation.lo, lit.annotation.hi):
                if isinstance(item, Var):
                    bare_vars.add(item.name)
        for lit in clause.negatives:
            if lit.annotation.variables:
                raise self.error(
                    f"annotation variable inside negated literal not({lit})", tok
                )
        missing = clause.head.annotation.variables - body_ann_vars
        if missing:
            raise self.error(
                f"head annotation variable(s) {', '.join(sorted(missing))} not in body", tok
            )
        unbound = body_ann_vars - bare_vars
        if unbound:
            raise self.error(
                f"annotation variable(s) {', '.join(sorted(unbound))} never occur as a "
                "bare endpoint in a positive body literal",
                tok,
            )
        body_obj_vars = {
            v for lit in (*clause.positives, *clause.negatives) for v in lit.formula.variables
        }
        unsafe = [v for v in clause.head.formula.variables if v not in body_obj_vars]
        if unsafe:
            raise self.error(f"head object variable(s) {', '.join(unsafe)} not in body", tok)

    def literal(self) -> tuple[bool, Literal]:
        if self.tok.kind == "ident" and self.tok.text == "not":
            self.advance()
            self.expect("(")
            lit = self.annformula()
            self.expect(")")
            return True, lit
        return False, self.annformula()

    def annformula(self) -> Literal:
        formula = self.basic()
        self.expect(":")
        return Literal(formula, self.annotation())

    def basic(self) -> BasicFormula:
        if self.at("("):
            self.advance()
            f = self.basic()
            self.expect(")")
            return f
        atoms = [self.atom()]
        connective = None
        while self.at("^") or self.at("|"):
            op = CONJ if self.tok.text == "^" else DISJ
            if connective is not None and op != connective:
                raise self.error("cannot mix '^' and '|' in one basic formula")
            connective = op
            self.advance()
            atoms.append(self.atom())
        return BasicFormula(connective or CONJ, tuple(atoms))

    def atom(self) -> Atom:
        tok = self.tok
        if tok.kind != "ident" or is_variable(tok.text) or tok.text == "not":
            raise self.error(f"expected a predicate name, found {tok.text or 'end of input'!r}")
        self.advance()
        args = []
        if self.at("("):
            self.advance()
            while True:
                t = self.tok
                if t.kind != "ident":
                    raise self.error(f"expected a term, found {t.text or 'end of input'!r}")
                args.append(self.advance().text)
                if not self.at(","):
                    break
                self.advance()
            self.expect(")")
        known = self.arity.setdefault(tok.text, len(args))
        if known != len(args):
            raise self.error(
                f"predicate {tok.text} used with arity {len(args)}, earlier with {known}", tok
            )
        return Atom(tok.text, tuple(args))

    def annotation(self) -> Annotation:
        self.expect("[")
        lo = self.item()
        self.expect(",")
        hi = self.item()
        self.expect("]")
        return Annotation(lo, hi)

    def item(self) -> Item:
        left = self.primary()
        while self.at("*") or self.at("/"):
            name = "mul" if self.advance().text == "*" else "div"
            left = Func(name, (left, self.primary()))
        return left

    def primary(self) -> Item:
        tok = self.tok
        if tok.kind == "number":
            self.advance()
            num, _, den = tok.text.partition("/")
            if den and int(den) == 0:
                raise self.error("zero denominator", tok)
            value = Fraction(int(num), int(den)) if den else Fraction(num)
            if not 0 <= value <= 1:
                raise self.error(f"annotation constant {tok.text} outside [0, 1]", tok)
            return Const(value)
        if tok.kind == "ident":
            self.advance()
            if is_variable(tok.text):
                return Var(tok.text)
            if tok.text not in FUNCTION_ARITY:
                raise self.error(f"unknown annotation function {tok.text!r}", tok)
            self.expect("(")
            args = [self.item()]
            while self.at(","):
                self.advance()
                args.append(self.item())
            self.expect(")")
            arity = FUNCTION_ARITY[tok.text]
            if arity is not None and len(args) != arity:
                raise self.error(f"{tok.text} takes {arity} arguments, got {len(args)}", tok)
            return Func(tok.text, tuple(args))
        raise self.error(f"expected an annotation item, found {tok.text or 'end of input'!r}")

    def finish(self):
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")


def parse_program(text: str) -> GpProgram:
    return _Parser(text).program()


def parse_formula(text: str) -> BasicFormula:
    p = _Parser(text)
    f = p.basic()
    p.finish()
    return f


def parse_annotation(text: str) -> Annotation:
    p = _Parser(text)
    a = p.annotation()
    p.finish()
    return a


def program_constants(program: GpProgram | Iterable[GpClause]) -> list[str]:
    clauses = program.clauses if isinstance(program, GpProgram) else program
    consts = set()
    for c in clauses:
        for lit in (c.head, *c.positives, *c.negatives):
            for atom in lit.formula.atoms:
                consts.update(a for a in atom.args if not is_variable(a))
    return sorted(consts)


def program_predicates(program: GpProgram) -> dict[str, int]:
    preds = {}
    for c in program.clauses:
        for lit in (c.head, *c.positives, *c.negatives):
            for atom in lit.formula.atoms:
                preds.setdefault(atom.predicate, len(atom.args))
    return dict(sorted(preds.items()))
