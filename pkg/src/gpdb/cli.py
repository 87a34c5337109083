"""``gpdb`` command-line driver.

Exit codes: 0 success, 1 I/O or unexpected error, 2 usage, 3 parse error,
4 least fixpoint asked of a program with negation, 5 budget exceeded,
6 fixpoint iteration did not converge.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .errors import GpdbError, NegationError, ParseError
from .fixpoint import DEFAULT_MAX_ITERS, FormulaFunction, Stats, lfp
from .ground import DEFAULT_MAX_ATOMS, GroundProgram, ground_program, with_tracked
from .interval import Interval
from .stable import (
    DEFAULT_MAX_NEG,
    StableClass,
    alternating_class,
    enumerate_stable_functions,
    hoare_minimal,
    minimal_stable_classes,
    smyth_minimal,
)
from .syntax import BasicFormula, parse_formula, parse_program

SEMANTICS = ("lfp", "stable", "classes", "hoare", "smyth")
NO_STABLE = "no stable formula function; alternating class available"


@dataclass
class QueryRequest:
    program: str
    command: str
    formula: Optional[str] = None
    semantics: Optional[str] = None
    selection: Optional[str] = None  # "hoare" / "smyth" for the classes command
    max_atoms: int = DEFAULT_MAX_ATOMS
    max_neg: int = DEFAULT_MAX_NEG
    max_iters: int = DEFAULT_MAX_ITERS
    structured: bool = False


@dataclass
class QueryReport:
    command: str
    program: str
    base_size: int
    results: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)
    text: list = field(default_factory=list)

    def to_json(self) -> dict:
        doc = {
            "command": self.command,
            "program": self.program,
            "base_size": self.base_size,
            "results": self.results,
        }
        doc.update(self.extra)
        doc["diagnostics"] = self.diagnostics
        return doc


def _interval_hull(values: list[Interval]) -> Optional[Interval]:
    nonempty = [v for v in values if not v.is_empty]
    if not nonempty:
        return None
    return Interval(min(v.lo for v in nonempty), max(v.hi for v in nonempty))


def _named(functions, prefix="h"):
    return [(f"{prefix}{i}", h) for i, h in enumerate(functions, 1)]


def _fn_text(name: str, h: FormulaFunction) -> list[str]:
    width = max((len(str(f)) for f in h.formulas), default=0)
    return [f"{name}:"] + [f"  {str(f):<{width}}  {v}" for f, v in h.items()]


def _load(req: QueryRequest) -> GroundProgram:
    with open(req.program, encoding="utf-8") as fh:
        program = parse_program(fh.read())
    return ground_program(program, req.max_atoms)


def _query_formula(g: GroundProgram, text: str) -> tuple[GroundProgram, BasicFormula]:
    formula = parse_formula(text)
    if formula.variables:
        raise ParseError(f"query formula {formula} is not ground")
    try:
        return with_tracked(g, [formula]), formula
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _classes_with_names(classes: list[StableClass]):
    named = []
    counter = 0
    for ci, cls in enumerate(classes, 1):
        members = []
        for h in cls:
            counter += 1
            members.append((f"h{counter}", h))
        named.append((f"C{ci}", cls, members))
    return named


def run(req: QueryRequest) -> QueryReport:
    g = _load(req)
    stats = Stats()
    report = QueryReport(req.command, req.program, len(g.base))
    cmd = req.command

    if cmd == "check":
        summary = {
            "ground_clauses": len(g.clauses),
            "base_size": len(g.base),
            "tracked": len(g.tracked),
            "blocking_keys": len(g.negation_keys),
            "negation_free": g.is_pf,
        }
        report.results.append(summary)
        report.text += [f"{k}: {v}" for k, v in summary.items()]

    elif cmd == "lfp":
        h = lfp(g, req.max_iters, stats)
        report.results = [{"formula": str(f), "interval": v.to_json()} for f, v in h.items()]
        report.text += _fn_text("least fixpoint", h)

    elif cmd == "stable":
        functions = enumerate_stable_functions(g, req.max_neg, req.max_iters, stats)
        report.results = [{"name": n, "values": h.to_json()} for n, h in _named(functions)]
        report.text.append(f"stable formula functions: {len(functions)}")
        for n, h in _named(functions):
            report.text += _fn_text(n, h)
        if not functions:
            report.diagnostics["note"] = NO_STABLE
            report.text.append(NO_STABLE)

    elif cmd == "classes":
        classes = minimal_stable_classes(g, req.max_neg, req.max_iters, stats)
        named = _classes_with_names(classes)
        hoare = {id(c) for c in hoare_minimal(classes)}
        smyth = {id(c) for c in smyth_minimal(classes)}
        selected = named
        if req.selection == "hoare":
            selected = [x for x in named if id(x[1]) in hoare]
        elif req.selection == "smyth":
            selected = [x for x in named if id(x[1]) in smyth]
        report.results = [
            {"name": cn, "members": [{"name": n, "values": h.to_json()} for n, h in members]}
            for cn, _, members in selected
        ]
        report.extra["hoare_minimal"] = [cn for cn, c, _ in named if id(c) in hoare]
        report.extra["smyth_minimal"] = [cn for cn, c, _ in named if id(c) in smyth]
        title = {"hoare": "Hoare-minimal", "smyth": "Smyth-minimal"}.get(req.selection, "minimal")
        report.text.append(f"{title} stable classes: {len(selected)}")
        for cn, _, members in selected:
            report.text.append(f"{cn} ({len(members)} function{'' if len(members) == 1 else 's'})")
            for n, h in members:
                report.text += ["  " + line for line in _fn_text(n, h)]
        if req.selection is None:
            report.text.append("Hoare-minimal: " + ", ".join(report.extra["hoare_minimal"]))
            report.text.append("Smyth-minimal: " + ", ".join(report.extra["smyth_minimal"]))

    elif cmd == "query":
        g, formula = _query_formula(g, req.formula)
        semantics = req.semantics or ("lfp" if g.is_pf else "stable")
        report.extra["formula"] = str(formula)
        report.extra["semantics"] = semantics
        if semantics == "lfp":
            v = lfp(g, req.max_iters, stats)[formula]
            report.results = [{"formula": str(formula), "interval": v.to_json()}]
            report.text.append(f"{formula}: {v}")
        elif semantics == "stable":
            functions = enumerate_stable_functions(g, req.max_neg, req.max_iters, stats)
            values = [h[formula] for h in functions]
            report.results = [
                {"function": n, "interval": h[formula].to_json()} for n, h in _named(functions)
            ]
            hull = _interval_hull(values)
            report.extra["hull"] = hull.to_json() if hull else None
            report.text += [f"{n}: {formula}: {h[formula]}" for n, h in _named(functions)]
            if not functions:
                report.diagnostics["note"] = NO_STABLE
                report.text.append(NO_STABLE)
            elif hull is not None:
                report.text.append(f"hull (convenience only): {hull}")
        else:
            classes = minimal_stable_classes(g, req.max_neg, req.max_iters, stats)
            if semantics == "hoare":
                keep = hoare_minimal(classes)
            elif semantics == "smyth":
                keep = smyth_minimal(classes)
            else:
                keep = classes
            keep_ids = {id(c) for c in keep}
            for cn, cls, members in _classes_with_names(classes):
                if id(cls) not in keep_ids:
                    continue
                report.results.append(
                    {
                        "class": cn,
                        "functions": [
                            {"function": n, "interval": h[formula].to_json()} for n, h in members
                        ],
                    }
                )
                report.text.append(
                    f"{cn}: " + ", ".join(f"{n} {h[formula]}" for n, h in members)
                )
    else:
        raise ValueError(f"unknown command {cmd!r}")

    report.diagnostics.update(
        iterations=stats.iterations, fixpoints=stats.lfp_runs, lp_calls=stats.lp_calls
    )
    return report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit one structured JSON document")
    common.add_argument("--max-atoms", type=int, default=argparse.SUPPRESS, metavar="N")
    common.add_argument("--max-neg", type=int, default=argparse.SUPPRESS, metavar="N")
    common.add_argument("--max-iters", type=int, default=argparse.SUPPRESS, metavar="N")

    parser = argparse.ArgumentParser(
        prog="gpdb",
        parents=[common],
        description="Probabilistic deductive databases with non-monotonic negation.",
    )
    parser.add_argument("--version", action="version", version=f"gpdb {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="parse and ground, print a summary")
    p.add_argument("file")
    p = sub.add_parser("lfp", parents=[common], help="least fixpoint of a negation-free program")
    p.add_argument("file")
    p = sub.add_parser("stable", parents=[common], help="enumerate stable formula functions")
    p.add_argument("file")
    p = sub.add_parser("classes", parents=[common], help="inclusion-minimal stable classes")
    p.add_argument("file")
    sel = p.add_mutually_exclusive_group()
    sel.add_argument("--hoare", dest="selection", action="store_const", const="hoare")
    sel.add_argument("--smyth", dest="selection", action="store_const", const="smyth")
    p = sub.add_parser("query", parents=[common], help="interval of one ground basic formula")
    p.add_argument("file")
    p.add_argument("-F", "--formula", required=True)
    p.add_argument("--semantics", choices=SEMANTICS)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    req = QueryRequest(
        program=args.file,
        command=args.command,
        formula=getattr(args, "formula", None),
        semantics=getattr(args, "semantics", None),
        selection=getattr(args, "selection", None),
        max_atoms=getattr(args, "max_atoms", DEFAULT_MAX_ATOMS),
        max_neg=getattr(args, "max_neg", DEFAULT_MAX_NEG),
        max_iters=getattr(args, "max_iters", DEFAULT_MAX_ITERS),
        structured=getattr(args, "json", False),
    )
    try:
        report = run(req)
    except GpdbError as exc:
        print(f"gpdb: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"gpdb: {exc}", file=sys.stderr)
        return 1
    if req.structured:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print("\n".join(report.text))
    return 0


if __name__ == "__main__":
    sys.exit(main())
