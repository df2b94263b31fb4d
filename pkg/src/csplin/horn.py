"""Decision procedure for Horn clauses over linear (dis)equalities.

The main loop deletes every negative literal ``t != 0`` whose equation
``t = 0`` follows from the unit equations collected so far, promotes clauses
left with a single positive literal to units, and stops when a pass deletes
nothing.  Each literal carries its term reduced against the current
triangular form, so entailment is detected as the cached row reaching zero.

On success the free variables (non-pivots, in formula order) are set to
``S, S**2, ...`` and the pivots are back-substituted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .formula import Clause, CnfFormula, LinearTerm, Literal
from .gauss import (IntRow, Outcome, TriangularSystem, _content, _divide,
                    _row_bits, _to_int_row, eliminate)


class NotHornError(ValueError):
    """Raised for a clause with two or more positive literals."""

    def __init__(self, clause_index: int, clause: Clause):
        self.clause_index = clause_index
        self.clause = clause
        super().__init__(f"clause {clause_index} has {len(clause.positives)} positive literals: {clause}")


class WitnessError(AssertionError):
    """A constructed witness failed exact evaluation (an internal bug)."""


@dataclass(frozen=True)
class Event:
    kind: str  # unit | delete | satisfied | empty | inconsistent
    clause: int
    literal: int | None = None
    iteration: int = 0


@dataclass(frozen=True)
class Sat:
    assignment: dict[str, Fraction]

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Unsat:
    trace: tuple[Event, ...] = ()
    reason: str = ""

    def __bool__(self):
        return False


@dataclass
class SolveStats:
    iterations: int = 0
    deleted_per_iteration: list[int] = field(default_factory=list)
    max_row_bits: int = 0
    input_bits: int = 0


class HornInstance:
    def __init__(self, formula: CnfFormula):
        for i, c in enumerate(formula.clauses):
            if not c.is_horn():
                raise NotHornError(i, c)
        self.formula = formula


def compute_S(residual: Iterable[Clause | Literal | LinearTerm | IntRow]) -> Fraction:
    """One plus the largest absolute coefficient sum over residual disequalities.

    Terms are made integral first; constants count toward the sum.  Never
    below 2.
    """
    best = 0
    for row in _residual_rows(residual):
        best = max(best, sum(abs(c) for c in row.values()))
    return Fraction(max(2, best + 1))


def _residual_rows(residual) -> Iterable[IntRow]:
    for item in residual:
        if isinstance(item, Clause):
            for l in item.negatives:
                yield _int(l.term)
        elif isinstance(item, Literal):
            if not item.positive:
                yield _int(item.term)
        elif isinstance(item, LinearTerm):
            yield _int(item)
        else:
            yield item


def _int(t: LinearTerm) -> IntRow:
    row = _to_int_row(t)
    return _divide(row, _content(row))


def build_witness(units: TriangularSystem, residual: Iterable[Clause | Literal | LinearTerm],
                  variables: Sequence[str]) -> dict[str, Fraction]:
    """Assignment satisfying ``units`` and every residual disequality.

    Residual terms are reduced by ``units`` first; none may reduce to zero.
    """
    rows = []
    for row in _residual_rows(residual):
        reduced = units.reduce_row(row)
        if not reduced:
            raise ValueError("a residual disequality is entailed to be zero")
        rows.append(reduced)
    return _assign(units, rows, variables)


def _assign(units: TriangularSystem, rows: list[IntRow], variables: Sequence[str]) -> dict[str, Fraction]:
    S = compute_S(rows)
    known = list(dict.fromkeys(list(variables) + sorted(units.variables() - set(variables))))
    free = [v for v in known if v not in units.pivots]
    values = {v: S ** (i + 1) for i, v in enumerate(free)}
    values.update(units.solution(values))
    return {v: values[v] for v in known}


class HornSolver:
    """One run of the propagation loop on a Horn CNF."""

    def __init__(self, formula: CnfFormula):
        HornInstance(formula)
        self.formula = formula
        self.units = TriangularSystem(formula.variables)
        self.trace: list[Event] = []
        self.stats = SolveStats()
        clauses = formula.clauses
        self._alive = [[True] * len(c) for c in clauses]
        self._remaining = [len(c) for c in clauses]
        self._active = [True] * len(clauses)
        self._rows: dict[tuple[int, int], IntRow] = {}
        self._watch: dict[str, set[tuple[int, int]]] = {}
        self._pending: set[tuple[int, int]] = set()
        self.deleted: set[tuple[int, int]] = set()
        bits = 0
        for i, c in enumerate(clauses):
            for j, lit in enumerate(c.literals):
                row = _int(lit.term)
                bits += _row_bits(row) or 1
                self._rows[i, j] = row
                for v in row:
                    if v is not None:
                        self._watch.setdefault(v, set()).add((i, j))
        self.stats.input_bits = bits

    # -- bookkeeping ------------------------------------------------------

    def _classify(self, key: tuple[int, int], iteration: int):
        """React to a cached row that has lost all its variables."""
        i, j = key
        if not self._active[i] or not self._alive[i][j]:
            return
        row = self._rows[key]
        lit = self.formula.clauses[i].literals[j]
        if lit.positive:
            if not row:
                self._satisfy(i, iteration)
        elif not row:
            self._pending.add(key)
        else:
            # t != 0 with t a nonzero constant under the units
            self._satisfy(i, iteration)

    def _satisfy(self, i: int, iteration: int):
        self._active[i] = False
        self.trace.append(Event("satisfied", i, None, iteration))

    def _add_unit(self, i: int, iteration: int) -> bool:
        j = next(j for j, a in enumerate(self._alive[i]) if a)
        lit = self.formula.clauses[i].literals[j]
        outcome = self.units.add_equation(lit.term)
        if outcome is Outcome.INCONSISTENT:
            self.trace.append(Event("inconsistent", i, j, iteration))
            return False
        self.trace.append(Event("unit", i, j, iteration))
        self._active[i] = False
        if outcome is Outcome.ADDED:
            self._propagate_pivot(self.units.last_pivot, iteration)
        return True

    def _propagate_pivot(self, pivot: str, iteration: int):
        prow = self.units.pivot_row(pivot)
        for key in sorted(self._watch.pop(pivot, ())):
            row = self._rows[key]
            if pivot not in row:
                continue
            row = eliminate(row, pivot, prow)
            self._rows[key] = row
            bits = _row_bits(row)
            if bits > self.stats.max_row_bits:
                self.stats.max_row_bits = bits
            for v in row:
                if v is not None:
                    self._watch.setdefault(v, set()).add(key)
            if len(row) == 0 or (len(row) == 1 and None in row):
                self._classify(key, iteration)
        if self.units.max_row_bits > self.stats.max_row_bits:
            self.stats.max_row_bits = self.units.max_row_bits

    # -- main loop --------------------------------------------------------

    def solve(self) -> Sat | Unsat:
        clauses = self.formula.clauses
        for i, c in enumerate(clauses):
            if len(c) == 0:
                self.trace.append(Event("empty", i, None, 0))
                return Unsat(tuple(self.trace), "empty clause in input")
        # constant-only literals are decided without any units
        for key, row in self._rows.items():
            if not any(v is not None for v in row):
                self._classify(key, 0)
        for i, c in enumerate(clauses):
            if self._active[i] and len(c) == 1 and c.literals[0].positive:
                if not self._add_unit(i, 0):
                    return Unsat(tuple(self.trace), "inconsistent unit equations")

        iteration = 0
        while True:
            iteration += 1
            batch = sorted(k for k in self._pending if self._active[k[0]] and self._alive[k[0]][k[1]])
            self._pending.clear()
            touched = []
            for i, j in batch:
                self._alive[i][j] = False
                self._remaining[i] -= 1
                self.deleted.add((i, j))
                self.trace.append(Event("delete", i, j, iteration))
                touched.append(i)
            self.stats.deleted_per_iteration.append(len(batch))
            touched = sorted(set(touched))
            for i in touched:
                if self._active[i] and self._remaining[i] == 0:
                    self.trace.append(Event("empty", i, None, iteration))
                    self.stats.iterations = iteration
                    return Unsat(tuple(self.trace), "empty clause derived")
            for i in touched:
                if not self._active[i] or self._remaining[i] != 1:
                    continue
                j = self._alive[i].index(True)
                if clauses[i].literals[j].positive and not self._add_unit(i, iteration):
                    self.stats.iterations = iteration
                    return Unsat(tuple(self.trace), "inconsistent unit equations")
            if not batch:
                break
        self.stats.iterations = iteration
        self.stats.max_row_bits = max(self.stats.max_row_bits, self.units.max_row_bits)

        residual = [self._rows[i, j]
                    for i, c in enumerate(clauses) if self._active[i]
                    for j, lit in enumerate(c.literals)
                    if self._alive[i][j] and not lit.positive]
        assignment = _assign(self.units, residual, self.formula.variables)
        if not self.formula.evaluate(assignment):
            raise WitnessError(f"witness {assignment} violates {self.formula}")
        return Sat(assignment)

    def residual_clauses(self) -> list[Clause]:
        """Active clauses with their surviving literals (after ``solve``)."""
        out = []
        for i, c in enumerate(self.formula.clauses):
            if self._active[i]:
                out.append(Clause(tuple(l for j, l in enumerate(c.literals) if self._alive[i][j])))
        return out


def solve(formula: CnfFormula | HornInstance) -> Sat | Unsat:
    if isinstance(formula, HornInstance):
        formula = formula.formula
    return HornSolver(formula).solve()


def replay(formula: CnfFormula, trace: Sequence[Event]) -> bool:
    """Re-check an Unsat trace from scratch; True iff it ends in a contradiction.

    Every deletion must be entailed by the units introduced before it, every
    unit must come from a clause whose other literals were deleted.
    """
    units = TriangularSystem(formula.variables)
    deleted: set[tuple[int, int]] = set()
    clauses = formula.clauses
    for k, ev in enumerate(trace):
        last = k == len(trace) - 1
        c = clauses[ev.clause]
        if ev.kind == "delete":
            lit = c.literals[ev.literal]
            if lit.positive or not units.entails(lit.term):
                return False
            deleted.add((ev.clause, ev.literal))
        elif ev.kind in ("unit", "inconsistent"):
            lit = c.literals[ev.literal]
            others = [j for j in range(len(c)) if j != ev.literal]
            if not lit.positive or any((ev.clause, j) not in deleted for j in others):
                return False
            outcome = units.add_equation(lit.term)
            if (outcome is Outcome.INCONSISTENT) != (ev.kind == "inconsistent"):
                return False
            if ev.kind == "inconsistent":
                return last
        elif ev.kind == "empty":
            if any((ev.clause, j) not in deleted for j in range(len(c))):
                return False
            return last
        elif ev.kind != "satisfied":
            return False
    return False


def is_satisfiable(formula: CnfFormula) -> bool:
    return bool(solve(formula))


def check_witness(formula: CnfFormula, assignment: Mapping[str, Fraction]) -> bool:
    return formula.evaluate(assignment)
