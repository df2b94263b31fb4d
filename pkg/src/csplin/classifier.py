"""Reduced definitions and the three-way verdict for a finite language.

A language is HORN when every relation has a Horn reduced definition,
ZERO-TUPLE when every non-empty relation contains (0, ..., 0), and NP-HARD
otherwise; NP-HARD reports carry gadgets that were checked by sampling.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from . import catalog
from .formula import Clause, CnfFormula, Language, LinearTerm, Literal, Mode, Relation
from .gadgets import (GadgetError, GadgetWitness, affine_sd_gadget, find_sq_witness,
                      neq_gadget, search_neq_definition, sq_gadget)
from .pp import PpFormula, Verified, parse_pp, verify_gadget
from .rational import format_rational
from .semantics import contains_zero_tuple, equivalent, negated_clause, sat_cnf
from .syntax import format_formula, parse_formula

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReducedRelation:
    original: Relation
    reduced: CnfFormula
    removal_log: tuple[tuple[int, int], ...] = ()

    @property
    def name(self) -> str:
        return self.original.name

    def relation(self) -> Relation:
        return Relation(self.original.name, self.reduced)


def is_horn(f: CnfFormula) -> bool:
    return all(c.is_horn() for c in f.clauses)


def _empty_form(variables) -> CnfFormula:
    # the constant literal 0 != 0 is false everywhere
    return CnfFormula((Clause((Literal.ne(LinearTerm()),)),), tuple(variables))


def reduce_formula(f: CnfFormula | Relation, budget: int | None = None) -> ReducedRelation:
    """Remove literals one at a time while the defined set stays the same.

    Clauses are scanned in order, literals within a clause in order; the
    scan restarts after every successful removal.  Removing l from C keeps
    the relation iff the current formula and the negation of C without l
    is unsatisfiable.
    """
    if isinstance(f, Relation):
        original = f
        f = f.definition
    else:
        original = Relation("_", f)
    variables = f.variables
    if not sat_cnf(f, budget):
        return ReducedRelation(original, _empty_form(variables))
    clauses = []
    for c in f.clauses:
        if not c.is_tautology() and c not in clauses:
            clauses.append(c)
    removed = []
    changed = True
    while changed:
        changed = False
        current = CnfFormula(tuple(clauses), variables)
        for i, c in enumerate(clauses):
            if len(c) < 2:
                continue
            for j in range(len(c)):
                shorter = c.without(j)
                if not sat_cnf(current.conjoin(negated_clause(shorter)), budget):
                    removed.append((i, j))
                    clauses[i] = shorter
                    if shorter in clauses[:i] + clauses[i + 1:]:
                        del clauses[i]
                    changed = True
                    break
            if changed:
                break
    reduced = CnfFormula(tuple(clauses), variables)
    if not equivalent(reduced, f, budget):
        raise AssertionError("reduced formula is not equivalent to its input")
    return ReducedRelation(original, reduced, tuple(removed))


class Verdict(enum.Enum):
    HORN = "HORN"
    ZERO_TUPLE = "ZERO-TUPLE"
    NP_HARD = "NP-HARD"


@dataclass
class RelationEvidence:
    name: str
    reduced: CnfFormula
    horn: bool
    empty: bool
    zero_tuple: bool


@dataclass
class ClassificationReport:
    verdict: Verdict
    mode: Mode
    relations: list[RelationEvidence] = field(default_factory=list)
    hard_relation: str | None = None
    witness: GadgetWitness | None = None
    neq_source: str | None = None
    gadgets: dict[str, PpFormula] = field(default_factory=dict)
    checks: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [self.verdict.value]
        for ev in self.relations:
            flags = [("horn" if ev.horn else "non-horn"),
                     ("empty" if ev.empty else ("zero-tuple" if ev.zero_tuple else "no zero-tuple"))]
            lines.append(f"  {ev.name}: {', '.join(flags)}")
            lines.append(f"    reduced: {format_formula(ev.reduced)}")
        if self.hard_relation:
            lines.append(f"hard relation: {self.hard_relation}")
        if self.witness:
            w = self.witness
            lines.append(f"  clause {w.clause_index}, literals {w.l1} and {w.l2}")
            lines.append(f"  p = ({', '.join(map(format_rational, w.p))})")
            lines.append(f"  q = ({', '.join(map(format_rational, w.q))})")
        if self.neq_source:
            lines.append(f"disequality from: {self.neq_source}")
        for kind, g in self.gadgets.items():
            lines.append(f"gadget {kind} (verified on {self.checks.get(kind, 0)} points):")
            lines.append(f"  {g.to_text()}")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines)

    def to_structured(self) -> str:
        out = [f"verdict: {self.verdict.value}", f"mode: {self.mode.value}"]
        for ev in self.relations:
            out.append(f"relation: {ev.name}")
            out.append(f"params: {' '.join(ev.reduced.variables)}")
            out.append(f"reduced: {format_formula(ev.reduced)}")
            out.append(f"horn: {str(ev.horn).lower()}")
            out.append(f"empty: {str(ev.empty).lower()}")
            out.append(f"zero_tuple: {str(ev.zero_tuple).lower()}")
        if self.hard_relation:
            out.append(f"hard_relation: {self.hard_relation}")
        if self.witness:
            w = self.witness
            out.append(f"clause: {w.clause_index}")
            out.append(f"literals: {w.l1} {w.l2}")
            out.append(f"p: {' '.join(map(format_rational, w.p))}")
            out.append(f"q: {' '.join(map(format_rational, w.q))}")
        if self.neq_source:
            out.append(f"neq_source: {self.neq_source}")
        for kind, g in self.gadgets.items():
            out.append(f"gadget: {kind} {self.checks.get(kind, 0)} {g.to_text()}")
        for note in self.notes:
            out.append(f"note: {note}")
        return "\n".join(out)

    @classmethod
    def parse_structured(cls, text: str) -> ClassificationReport:
        """Inverse of ``to_structured``."""
        report = None
        pending = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            key, _, value = line.partition(": ")
            if key == "verdict":
                verdict = Verdict(value)
            elif key == "mode":
                report = cls(verdict, Mode(value))
            elif key == "relation":
                pending = {"name": value}
            elif key == "params":
                pending["params"] = tuple(value.split())
            elif key == "reduced":
                pending["reduced"] = parse_formula(value, pending.pop("params"), report.mode)
            elif key in ("horn", "empty"):
                pending[key] = value == "true"
            elif key == "zero_tuple":
                report.relations.append(RelationEvidence(zero_tuple=value == "true", **pending))
            elif key == "hard_relation":
                report.hard_relation = value
            elif key == "clause":
                wit = {"clause_index": int(value)}
            elif key == "literals":
                wit["l1"], wit["l2"] = map(int, value.split())
            elif key == "p":
                wit["p"] = tuple(Fraction(x) for x in value.split())
            elif key == "q":
                wit["q"] = tuple(Fraction(x) for x in value.split())
                report.witness = GadgetWitness(report.hard_relation, **wit)
            elif key == "neq_source":
                report.neq_source = value
            elif key == "gadget":
                kind, n, pp = value.split(" ", 2)
                report.gadgets[kind] = parse_pp(pp)
                report.checks[kind] = int(n)
            elif key == "note":
                report.notes.append(value)
            else:
                raise ValueError(f"unknown report key {key!r}")
        if report is None:
            raise ValueError("report has no mode line")
        return report


def _check_mode(lang: Language):
    if lang.mode is Mode.LINEAR:
        for r in lang.relations:
            for lit in r.definition.literals():
                if lit.term.const:
                    raise ValueError(f"relation {r.name} uses a nonzero constant; "
                                     "classification covers homogeneous (ne/eq of linear forms) only")


def classify(lang: Language, budget: int | None = None, verify: bool = True) -> ClassificationReport:
    _check_mode(lang)
    evidence = []
    reduced: dict[str, ReducedRelation] = {}
    for r in lang.relations:
        red = reduce_formula(r, budget)
        reduced[r.name] = red
        empty = not sat_cnf(r.definition, budget)
        evidence.append(RelationEvidence(r.name, red.reduced, is_horn(red.reduced), empty,
                                         (not empty) and contains_zero_tuple(r)))
    if all(ev.horn for ev in evidence):
        return ClassificationReport(Verdict.HORN, lang.mode, evidence)
    if all(ev.empty or ev.zero_tuple for ev in evidence):
        return ClassificationReport(Verdict.ZERO_TUPLE, lang.mode, evidence)

    report = ClassificationReport(Verdict.NP_HARD, lang.mode, evidence)
    hard = next(ev for ev in evidence if not ev.horn)
    rel = lang[hard.name]
    red = reduced[hard.name]
    report.hard_relation = hard.name
    report.witness = find_sq_witness(rel, red.reduced)

    if lang.mode is Mode.LINEAR:
        src = next(ev for ev in evidence if not ev.empty and not ev.zero_tuple)
        report.neq_source = src.name
        neq = neq_gadget(lang[src.name])
        report.gadgets["neq"] = neq
        report.gadgets["S"] = sq_gadget(rel, red.reduced)
        if verify:
            _verify(report, "neq", neq, catalog.NEQ, lang)
            _verify(report, "S", report.gadgets["S"], catalog.S_Q, lang)
    else:
        report.gadgets["S"] = affine_sd_gadget(rel, red.reduced, verify=False)
        if verify:
            _verify(report, "S", report.gadgets["S"], catalog.S_Q, lang)
        src = next((ev for ev in evidence if not ev.empty and not ev.zero_tuple), None)
        found = search_neq_definition(lang[src.name]) if src else None
        if found is not None:
            report.neq_source = src.name
            report.gadgets["neq"] = found
            report.checks["neq"] = verify_gadget(found, catalog.NEQ, Language(Mode.AFFINE, (lang[src.name],))).points_checked
        else:
            report.notes.append("neq taken as a primitive; no definition found within the search bound")
    return report


def _verify(report: ClassificationReport, kind: str, g: PpFormula, target: Relation, lang: Language):
    res = verify_gadget(g, target, lang)
    if not isinstance(res, Verified):
        raise AssertionError(f"{kind} gadget refuted: {res}")
    report.checks[kind] = res.points_checked


__all__ = ["ReducedRelation", "reduce_formula", "is_horn", "Verdict", "RelationEvidence",
           "ClassificationReport", "classify", "GadgetError"]
