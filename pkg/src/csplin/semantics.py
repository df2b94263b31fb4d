"""Complete and randomized satisfiability oracles for arbitrary CNF.

A conjunction of equations and disequations over Q is satisfiable iff the
equations are consistent and no disequation term is entailed to be zero;
``sat_cnf`` branches on one literal per clause and closes each branch with
that test.  These oracles are exponential and meant for small formulas.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .formula import Clause, CnfFormula, LinearTerm, Relation
from .gauss import Outcome, TriangularSystem
from .horn import Sat, Unsat, _assign, _int

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """The branch budget of an exhaustive search ran out."""


class Unknown:
    """Sampling found nothing; says nothing about unsatisfiability."""

    def __bool__(self):
        return False

    def __repr__(self):
        return "Unknown()"


def default_budget() -> int:
    env = os.environ.get("CSPLIN_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass
class ConjSystem:
    equalities: list[LinearTerm] = field(default_factory=list)
    disequalities: list[LinearTerm] = field(default_factory=list)


def sat_conj(c: ConjSystem, variables: Sequence[str] = ()) -> Sat | Unsat:
    """Decide a conjunction; the Unsat reason names the failing part.

    Reasons are ``"inconsistent"`` or ``"disequality <index>"``.
    """
    order = list(dict.fromkeys(list(variables) + [v for t in c.equalities + c.disequalities
                                                  for v in t.variables()]))
    units = TriangularSystem(order)
    for t in c.equalities:
        if units.add_equation(t) is Outcome.INCONSISTENT:
            return Unsat(reason="inconsistent")
    rows = []
    for k, t in enumerate(c.disequalities):
        row = units.reduce_row(_int(t))
        if not row:
            return Unsat(reason=f"disequality {k}")
        rows.append(row)
    return Sat(_assign(units, rows, order))


class _Search:
    def __init__(self, formula: CnfFormula, budget: int):
        self.formula = formula
        self.budget = budget
        self.nodes = 0

    def run(self) -> Sat | Unsat:
        f = self.formula
        units = TriangularSystem(f.variables)
        unit_diseq = []
        clauses = []
        for c in f.clauses:
            if len(c) == 1 and c.literals[0].positive:
                if units.add_equation(c.literals[0].term) is Outcome.INCONSISTENT:
                    return Unsat(reason="inconsistent unit equations")
            elif len(c) == 1:
                unit_diseq.append(c.literals[0].term)
            else:
                clauses.append(c)
        diseq = []
        for t in unit_diseq:
            row = units.reduce_row(_int(t))
            if not row:
                return Unsat(reason="unit disequality entailed zero")
            diseq.append(row)
        res = self._dfs(clauses, 0, units, diseq)
        if res is None:
            return Unsat(reason="all branches closed")
        return res

    def _dfs(self, clauses: list[Clause], k: int, units: TriangularSystem,
             diseq: list) -> Sat | None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"more than {self.budget} branches")
        # satisfied clauses need no branch
        while k < len(clauses) and self._settled(clauses[k], units, diseq):
            k += 1
        if k == len(clauses):
            return Sat(_assign(units, diseq, self.formula.variables))
        for lit in clauses[k].literals:
            if lit.positive:
                branch = units.copy()
                if branch.add_equation(lit.term) is Outcome.INCONSISTENT:
                    continue
                new_diseq = []
                ok = True
                for row in diseq:
                    r = branch.reduce_row(row)
                    if not r:
                        ok = False
                        break
                    new_diseq.append(r)
                if not ok:
                    continue
                res = self._dfs(clauses, k + 1, branch, new_diseq)
            else:
                row = units.reduce_row(_int(lit.term))
                if not row:
                    continue
                res = self._dfs(clauses, k + 1, units, diseq + [row])
            if res is not None:
                return res
        return None

    @staticmethod
    def _settled(clause: Clause, units: TriangularSystem, diseq: list) -> bool:
        for lit in clause.literals:
            if lit.positive and units.entails(lit.term):
                return True
            if not lit.positive:
                row = units.reduce_row(_int(lit.term))
                if row and all(v is None for v in row):
                    return True
                if row in diseq:
                    return True
        return False


def sat_cnf(f: CnfFormula, budget: int | None = None) -> Sat | Unsat:
    """Exact satisfiability of any CNF by clause splitting."""
    return _Search(f, default_budget() if budget is None else budget).run()


def is_sat(f: CnfFormula, budget: int | None = None) -> bool:
    return bool(sat_cnf(f, budget))


def negated_clause(c: Clause) -> list[Clause]:
    """Unit clauses whose conjunction is the negation of ``c``."""
    return [Clause((l.negate(),)) for l in c.literals]


def distinguishing_point(f: CnfFormula, g: CnfFormula, budget: int | None = None):
    """A point in exactly one of the two sets, or None if they coincide."""
    variables = tuple(dict.fromkeys(f.variables + g.variables))
    for a, b in ((f, g), (g, f)):
        for c in b.clauses:
            probe = a.with_variables(variables).conjoin(negated_clause(c))
            res = sat_cnf(probe, budget)
            if res:
                return res.assignment
    return None


def equivalent(f: CnfFormula, g: CnfFormula, budget: int | None = None) -> bool:
    if set(f.variables) != set(g.variables):
        raise ValueError("formulas must have the same free variables")
    return distinguishing_point(f, g, budget) is None


def contains_zero_tuple(r: Relation) -> bool:
    return r.definition.evaluate({v: Fraction(0) for v in r.params})


def _random_rational(rng: random.Random, box: int) -> Fraction:
    return Fraction(rng.randint(-box, box), rng.randint(1, box))


def sample_oracle(f: CnfFormula, trials: int = 200, seed: int = 0) -> Sat | Unknown:
    """Random assignments from a box that grows with the trial number.

    Each coordinate reuses an earlier coordinate's value with probability
    1/2, so equality-heavy formulas get hit too.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    for t in range(trials):
        box = 2 + t // 10
        values: list[Fraction] = []
        point = {}
        for v in f.variables:
            if values and rng.random() < 0.5:
                x = rng.choice(values)
            else:
                x = _random_rational(rng, box)
            values.append(x)
            point[v] = x
        if f.evaluate(point):
            return Sat(point)
    return Unknown()


def dnf_sat(f: CnfFormula) -> bool:
    """Full expansion into all literal choices; only for tiny formulas."""
    from itertools import product

    for choice in product(*[c.literals for c in f.clauses]):
        conj = ConjSystem([l.term for l in choice if l.positive],
                          [l.term for l in choice if not l.positive])
        if sat_conj(conj, f.variables):
            return True
    return False
