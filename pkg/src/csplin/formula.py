"""Formula data model: linear terms, (dis)equality literals, CNF.

Variables are plain strings.  A variable's ordinal is its position in the
``variables`` tuple of the enclosing :class:`CnfFormula`; literal
normalization and the witness ordering both depend on it.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .rational import as_rational, format_rational

log = logging.getLogger(__name__)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class MissingVariableError(KeyError):
    """An assignment does not cover every variable of a formula."""


class LinearTerm:
    """``sum(c * v for v, c in coeffs) + const``; zero coefficients are dropped.

    Instances are immutable.  Equality ignores coefficient order.
    """

    __slots__ = ("_coeffs", "const", "_hash")

    def __init__(self, coeffs: Mapping[str, object] | Iterable[tuple[str, object]] = (), const=0):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[str, Fraction] = {}
        for var, c in items:
            acc[var] = acc.get(var, _ZERO) + as_rational(c)
        self._coeffs = {v: c for v, c in acc.items() if c}
        self.const = as_rational(const)
        self._hash = None

    @classmethod
    def var(cls, name: str, coeff=1) -> LinearTerm:
        return cls({name: coeff})

    @classmethod
    def _raw(cls, coeffs: dict[str, Fraction], const: Fraction) -> LinearTerm:
        t = cls.__new__(cls)
        t._coeffs = coeffs
        t.const = const
        t._hash = None
        return t

    @property
    def coeffs(self) -> Mapping[str, Fraction]:
        return self._coeffs

    def items(self):
        return self._coeffs.items()

    def variables(self) -> tuple[str, ...]:
        return tuple(self._coeffs)

    def coeff(self, var: str) -> Fraction:
        return self._coeffs.get(var, _ZERO)

    def is_zero(self) -> bool:
        return not self._coeffs and not self.const

    def is_constant(self) -> bool:
        return not self._coeffs

    def __add__(self, other: LinearTerm) -> LinearTerm:
        acc = dict(self._coeffs)
        for v, c in other._coeffs.items():
            acc[v] = acc.get(v, _ZERO) + c
        return LinearTerm._raw({v: c for v, c in acc.items() if c}, self.const + other.const)

    def __neg__(self) -> LinearTerm:
        return LinearTerm._raw({v: -c for v, c in self._coeffs.items()}, -self.const)

    def __sub__(self, other: LinearTerm) -> LinearTerm:
        return self + (-other)

    def scale(self, factor) -> LinearTerm:
        factor = as_rational(factor)
        if not factor:
            return LinearTerm()
        return LinearTerm._raw({v: c * factor for v, c in self._coeffs.items()}, self.const * factor)

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        total = self.const
        for v, c in self._coeffs.items():
            try:
                total += c * assignment[v]
            except KeyError:
                raise MissingVariableError(v) from None
        return total

    def substitute(self, values: Mapping[str, Fraction]) -> LinearTerm:
        """Fold the given variable values into the constant."""
        const = self.const
        rest = {}
        for v, c in self._coeffs.items():
            if v in values:
                const += c * as_rational(values[v])
            else:
                rest[v] = c
        return LinearTerm._raw(rest, const)

    def rename(self, mapping: Mapping[str, str]) -> LinearTerm:
        return LinearTerm(((mapping.get(v, v), c) for v, c in self._coeffs.items()), self.const)

    def reorder(self, order: Sequence[str]) -> LinearTerm:
        """Same term with coefficients listed in ``order`` (unknown vars last)."""
        pos = {v: i for i, v in enumerate(order)}
        keys = sorted(self._coeffs, key=lambda v: (pos.get(v, len(pos)), v))
        return LinearTerm._raw({v: self._coeffs[v] for v in keys}, self.const)

    def __eq__(self, other):
        if not isinstance(other, LinearTerm):
            return NotImplemented
        return self.const == other.const and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self._coeffs.items()), self.const))
        return self._hash

    def __repr__(self):
        return f"LinearTerm({self})"

    def __str__(self):
        parts = []
        for v, c in self._coeffs.items():
            if c == 1:
                s = v
            elif c == -1:
                s = f"-{v}"
            else:
                s = f"{format_rational(c)}{v}"
            parts.append(s)
        if self.const or not parts:
            parts.append(format_rational(self.const))
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


class Rel(enum.Enum):
    EQ = "eq"
    NE = "ne"


@dataclass(frozen=True)
class Literal:
    """``term = 0`` (positive) or ``term != 0`` (negative)."""

    term: LinearTerm
    rel: Rel

    @classmethod
    def eq(cls, term: LinearTerm) -> Literal:
        return cls(term, Rel.EQ)

    @classmethod
    def ne(cls, term: LinearTerm) -> Literal:
        return cls(term, Rel.NE)

    @property
    def positive(self) -> bool:
        return self.rel is Rel.EQ

    def negate(self) -> Literal:
        return Literal(self.term, Rel.NE if self.positive else Rel.EQ)

    def holds(self, assignment: Mapping[str, Fraction]) -> bool:
        value = self.term.evaluate(assignment)
        return (value == 0) if self.positive else (value != 0)

    def constant_truth(self) -> bool | None:
        """Truth value when the term has no variables, else None."""
        if not self.term.is_constant():
            return None
        return (self.term.const == 0) == self.positive

    def variables(self) -> tuple[str, ...]:
        return self.term.variables()

    def substitute(self, values: Mapping[str, Fraction]) -> Literal:
        return Literal(self.term.substitute(values), self.rel)

    def rename(self, mapping: Mapping[str, str]) -> Literal:
        return Literal(self.term.rename(mapping), self.rel)

    def __str__(self):
        op = "=" if self.positive else "!="
        return f"{self.term} {op} 0"


def normalize(lit: Literal, order: Sequence[str] | None = None) -> Literal:
    """Scale so the first coefficient (by ordinal in ``order``) is +1.

    Without ``order`` the term's own coefficient order is used.  A term
    without variables is scaled to constant 0 or 1.
    """
    term = lit.term if order is None else lit.term.reorder(order)
    if term.is_constant():
        return Literal(LinearTerm((), 1 if term.const else 0), lit.rel)
    lead = next(iter(term.coeffs.values()))
    if lead != 1:
        term = term.scale(1 / lead)
    return Literal(term, lit.rel)


@dataclass(frozen=True)
class Clause:
    """A disjunction of literals; duplicates are merged on construction."""

    literals: tuple[Literal, ...] = ()

    def __post_init__(self):
        seen = dict.fromkeys(self.literals)
        if len(seen) != len(self.literals):
            object.__setattr__(self, "literals", tuple(seen))

    @property
    def positives(self) -> tuple[Literal, ...]:
        return tuple(l for l in self.literals if l.positive)

    @property
    def negatives(self) -> tuple[Literal, ...]:
        return tuple(l for l in self.literals if not l.positive)

    def is_horn(self) -> bool:
        return sum(1 for l in self.literals if l.positive) <= 1

    def is_tautology(self) -> bool:
        lits = set(self.literals)
        for l in self.literals:
            if l.constant_truth() is True or l.negate() in lits:
                return True
        return False

    def holds(self, assignment: Mapping[str, Fraction]) -> bool:
        return any(l.holds(assignment) for l in self.literals)

    def without(self, index: int) -> Clause:
        return Clause(self.literals[:index] + self.literals[index + 1:])

    def __len__(self):
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    def __str__(self):
        if not self.literals:
            return "false"
        return " or ".join(f"({l})" for l in self.literals)


@dataclass(frozen=True)
class CnfFormula:
    """Conjunction of clauses over an ordered variable list.

    Use :meth:`build` to get the canonical form (normalized literals,
    tautological clauses dropped); the raw constructor only validates.
    """

    clauses: tuple[Clause, ...]
    variables: tuple[str, ...]

    def __post_init__(self):
        known = set(self.variables)
        if len(known) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        for c in self.clauses:
            for l in c.literals:
                for v in l.variables():
                    if v not in known:
                        raise ValueError(f"literal {l} uses undeclared variable {v!r}")

    @classmethod
    def build(cls, clauses: Iterable[Iterable[Literal] | Clause],
              variables: Sequence[str] | None = None) -> CnfFormula:
        clause_lists = [tuple(c) for c in clauses]
        if variables is None:
            order: dict[str, None] = {}
            for lits in clause_lists:
                for l in lits:
                    order.update(dict.fromkeys(l.variables()))
            variables = tuple(order)
        variables = tuple(variables)
        out = []
        for lits in clause_lists:
            clause = Clause(tuple(normalize(l, variables) for l in lits))
            if clause.is_tautology():
                log.info("dropping tautological clause %s", clause)
                continue
            out.append(clause)
        return cls(tuple(out), variables)

    @classmethod
    def true(cls, variables: Sequence[str] = ()) -> CnfFormula:
        return cls((), tuple(variables))

    def evaluate(self, assignment: Mapping[str, Fraction]) -> bool:
        missing = [v for v in self.variables if v not in assignment]
        if missing:
            raise MissingVariableError(missing[0])
        return all(c.holds(assignment) for c in self.clauses)

    def is_horn(self) -> bool:
        return all(c.is_horn() for c in self.clauses)

    def literals(self) -> Iterable[Literal]:
        for c in self.clauses:
            yield from c.literals

    def conjoin(self, *others: CnfFormula | Iterable[Clause]) -> CnfFormula:
        clauses = list(self.clauses)
        variables = dict.fromkeys(self.variables)
        for o in others:
            if isinstance(o, CnfFormula):
                variables.update(dict.fromkeys(o.variables))
                clauses.extend(o.clauses)
            else:
                for c in o:
                    c = c if isinstance(c, Clause) else Clause(tuple(c))
                    for l in c.literals:
                        variables.update(dict.fromkeys(l.variables()))
                    clauses.append(c)
        return CnfFormula(tuple(clauses), tuple(variables))

    def with_variables(self, variables: Sequence[str]) -> CnfFormula:
        return CnfFormula(self.clauses, tuple(variables))

    def rename(self, mapping: Mapping[str, str]) -> CnfFormula:
        """Rename variables (merging those mapped to the same name)."""
        variables = tuple(dict.fromkeys(mapping.get(v, v) for v in self.variables))
        clauses = [[l.rename(mapping) for l in c.literals] for c in self.clauses]
        return CnfFormula.build(clauses, variables)

    def substitute(self, values: Mapping[str, Fraction]) -> CnfFormula:
        """Fix some variables to constants; they leave the variable list."""
        variables = tuple(v for v in self.variables if v not in values)
        clauses = tuple(Clause(tuple(l.substitute(values) for l in c.literals))
                        for c in self.clauses)
        return CnfFormula(clauses, variables)

    def __str__(self):
        if not self.clauses:
            return "true"
        return " and ".join(f"[{c}]" for c in self.clauses)


class Mode(enum.Enum):
    LINEAR = "linear"
    AFFINE = "affine"


class AffineInvarianceError(ValueError):
    def __init__(self, literal: Literal, where: str = ""):
        self.literal = literal
        suffix = f" in {where}" if where else ""
        super().__init__(
            f"literal {literal}{suffix} is not affine-invariant "
            "(coefficients must sum to 0 and the constant must be 0)")


def is_affine_literal(lit: Literal) -> bool:
    return lit.term.const == 0 and sum(lit.term.coeffs.values(), _ZERO) == 0


@dataclass(frozen=True)
class Relation:
    """A named relation with a quantifier-free CNF definition over its params."""

    name: str
    definition: CnfFormula

    @classmethod
    def define(cls, name: str, params: Sequence[str], clauses) -> Relation:
        return cls(name, CnfFormula.build(clauses, params))

    @property
    def params(self) -> tuple[str, ...]:
        return self.definition.variables

    @property
    def arity(self) -> int:
        return len(self.definition.variables)

    def contains(self, point: Sequence[Fraction]) -> bool:
        if len(point) != self.arity:
            raise ValueError(f"{self.name} has arity {self.arity}, got {len(point)} values")
        return self.definition.evaluate(dict(zip(self.params, point)))

    def instantiate(self, args: Sequence[str]) -> CnfFormula:
        """The definition with params replaced by ``args`` (repeats allowed)."""
        if len(args) != self.arity:
            raise ValueError(f"{self.name} expects {self.arity} arguments, got {len(args)}")
        return self.definition.rename(dict(zip(self.params, args)))


@dataclass(frozen=True)
class Language:
    mode: Mode
    relations: tuple[Relation, ...] = field(default_factory=tuple)

    def __post_init__(self):
        names = [r.name for r in self.relations]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate relation names in {names}")
        if self.mode is Mode.AFFINE:
            for r in self.relations:
                for l in r.definition.literals():
                    if not is_affine_literal(l):
                        raise AffineInvarianceError(l, f"relation {r.name}")

    def __getitem__(self, name: str) -> Relation:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(name)

    def __contains__(self, name) -> bool:
        return any(r.name == name for r in self.relations)

    def with_relations(self, *extra: Relation) -> Language:
        present = {r.name for r in self.relations}
        return Language(self.mode, self.relations + tuple(r for r in extra if r.name not in present))


def evaluate(formula: CnfFormula, assignment: Mapping[str, object]) -> bool:
    return formula.evaluate({v: as_rational(x) for v, x in assignment.items()})


def term(*pairs, const=0) -> LinearTerm:
    """Shorthand: ``term((1, "x"), (-2, "y"))`` is x - 2y."""
    return LinearTerm(((v, c) for c, v in pairs), const)


def eq(*pairs, const=0) -> Literal:
    return Literal.eq(term(*pairs, const=const))


def ne(*pairs, const=0) -> Literal:
    return Literal.ne(term(*pairs, const=const))


def diff(a: str, b: str) -> LinearTerm:
    """The term a - b."""
    return LinearTerm(((a, 1), (b, -1)))
