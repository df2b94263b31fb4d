"""Primitive positive formulas: existential conjunctions of atoms.

Atoms::

    (sum x y z)      x + y = z
    (fatom a b c d)  a - b + c = d
    (eq u v)         u = v
    (neq u v)        u != v
    (zero v)         v = 0   (equivalently v + v = v)
    (rel NAME v...)  a named relation of the target language

Text form: ``(pp (free VARS...) (exists VARS...) (atoms ATOM...))``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .formula import Clause, CnfFormula, Language, LinearTerm, Literal, Relation
from .semantics import sat_cnf
from .syntax import Atom as _SAtom, ParseError, SList, read_sexprs
from .rational import format_rational

BUILTIN_ARITY = {"sum": 3, "fatom": 4, "eq": 2, "neq": 2, "zero": 1}


@dataclass(frozen=True)
class PpAtom:
    kind: str
    args: tuple[str, ...]
    name: str | None = None

    def __post_init__(self):
        if self.kind == "rel":
            if not self.name:
                raise ValueError("rel atoms need a relation name")
        elif BUILTIN_ARITY.get(self.kind) != len(self.args):
            raise ValueError(f"bad atom {self.kind}{self.args}")

    def rename(self, mapping: Mapping[str, str]) -> PpAtom:
        return PpAtom(self.kind, tuple(mapping.get(a, a) for a in self.args), self.name)

    def literals(self, lang: Language | None) -> list[Clause]:
        a = self.args
        if self.kind == "sum":
            t = LinearTerm(((a[0], 1), (a[1], 1), (a[2], -1)))
        elif self.kind == "fatom":
            t = LinearTerm(((a[0], 1), (a[1], -1), (a[2], 1), (a[3], -1)))
        elif self.kind == "eq":
            t = LinearTerm(((a[0], 1), (a[1], -1)))
        elif self.kind == "zero":
            t = LinearTerm(((a[0], 1),))
        elif self.kind == "neq":
            return [Clause((Literal.ne(LinearTerm(((a[0], 1), (a[1], -1)))),))]
        else:
            if lang is None or self.name not in lang:
                raise KeyError(f"relation {self.name!r} is not in the target language")
            return list(lang[self.name].instantiate(a).clauses)
        return [Clause((Literal.eq(t),))]

    def to_text(self) -> str:
        if self.kind == "rel":
            return f"(rel {self.name} {' '.join(self.args)})"
        return f"({self.kind} {' '.join(self.args)})"


@dataclass(frozen=True)
class PpFormula:
    free: tuple[str, ...]
    bound: tuple[str, ...]
    atoms: tuple[PpAtom, ...]

    def __post_init__(self):
        names = self.free + self.bound
        if len(set(names)) != len(names):
            raise ValueError("free and bound variables must be distinct")
        known = set(names)
        for atom in self.atoms:
            for v in atom.args:
                if v not in known:
                    raise ValueError(f"atom {atom.to_text()} uses unknown variable {v!r}")

    @property
    def arity(self) -> int:
        return len(self.free)

    def relation_names(self) -> set[str]:
        return {a.name for a in self.atoms if a.kind == "rel"}

    def kinds(self) -> set[str]:
        return {a.kind for a in self.atoms}

    def expand(self, lang: Language | None = None) -> CnfFormula:
        """Quantifier-free matrix over free + bound variables."""
        clauses = []
        for atom in self.atoms:
            clauses.extend(atom.literals(lang))
        return CnfFormula.build(clauses, self.free + self.bound)

    def without_atom(self, index: int) -> PpFormula:
        return PpFormula(self.free, self.bound, self.atoms[:index] + self.atoms[index + 1:])

    def to_text(self) -> str:
        atoms = " ".join(a.to_text() for a in self.atoms)
        return (f"(pp (free {' '.join(self.free)}) (exists {' '.join(self.bound)}) "
                f"(atoms{' ' if atoms else ''}{atoms}))")

    def __str__(self):
        return self.to_text()


class PpBuilder:
    """Accumulates atoms and hands out fresh bound variable names."""

    def __init__(self, free: Sequence[str]):
        self.free = list(free)
        self.bound: list[str] = []
        self.atoms: list[PpAtom] = []
        self._taken = set(self.free)
        self._n = 0
        self._zero: str | None = None

    def fresh(self, hint: str = "t") -> str:
        while True:
            name = f"_{hint}{self._n}"
            self._n += 1
            if name not in self._taken:
                self._taken.add(name)
                self.bound.append(name)
                return name

    def add(self, kind: str, *args: str, name: str | None = None):
        self.atoms.append(PpAtom(kind, tuple(args), name))

    def zero(self) -> str:
        """A bound variable constrained to 0, shared across the formula."""
        if self._zero is None:
            self._zero = self.fresh("zero")
            self.add("zero", self._zero)
        return self._zero

    def inline(self, pp: PpFormula, args: Sequence[str]):
        """Conjoin ``pp`` with its free variables bound to ``args``."""
        if len(args) != len(pp.free):
            raise ValueError(f"expected {len(pp.free)} arguments, got {len(args)}")
        mapping = dict(zip(pp.free, args))
        for v in pp.bound:
            mapping[v] = self.fresh("i")
        for atom in pp.atoms:
            self.atoms.append(atom.rename(mapping))

    def build(self) -> PpFormula:
        used = {v for a in self.atoms for v in a.args}
        bound = tuple(v for v in self.bound if v in used)
        return PpFormula(tuple(self.free), bound, tuple(self.atoms))


def project(pp: PpFormula, keep: Sequence[str], names: Sequence[str] | None = None) -> PpFormula:
    """Existentially quantify every free variable not in ``keep``.

    ``keep`` lists old free names (repeats not allowed) in the new order;
    ``names`` optionally renames them.
    """
    names = list(keep) if names is None else list(names)
    b = PpBuilder(names)
    mapping = dict(zip(keep, names))
    for v in pp.free:
        if v not in mapping:
            mapping[v] = b.fresh("p")
    for v in pp.bound:
        mapping[v] = b.fresh("p")
    b.atoms = [a.rename(mapping) for a in pp.atoms]
    return b.build()


def identify(pp: PpFormula, keep: str, drop: str) -> PpFormula:
    """Substitute free variable ``drop`` by ``keep`` and remove it."""
    mapping = {drop: keep}
    return PpFormula(tuple(v for v in pp.free if v != drop), pp.bound,
                     tuple(a.rename(mapping) for a in pp.atoms))


def conjoin(pp: PpFormula, *atoms: PpAtom) -> PpFormula:
    return PpFormula(pp.free, pp.bound, pp.atoms + atoms)


# -- text format --------------------------------------------------------------

def _names(node, what) -> tuple[str, ...]:
    if not isinstance(node, SList) or not node or not isinstance(node[0], _SAtom) or node[0].text != what:
        raise ParseError(f"expected ({what} ...)", getattr(node, "line", 0), getattr(node, "col", 0))
    out = []
    for x in node[1:]:
        if not isinstance(x, _SAtom):
            raise ParseError("expected a variable name", getattr(x, "line", 0), getattr(x, "col", 0))
        out.append(x.text)
    return tuple(out)


def parse_pp(text: str) -> PpFormula:
    nodes = read_sexprs(text)
    if len(nodes) != 1 or not isinstance(nodes[0], SList) or len(nodes[0]) != 4:
        raise ParseError("expected (pp (free ...) (exists ...) (atoms ...))")
    node = nodes[0]
    if not isinstance(node[0], _SAtom) or node[0].text != "pp":
        raise ParseError("expected (pp ...)", node.line, node.col)
    free = _names(node[1], "free")
    bound = _names(node[2], "exists")
    atoms_node = node[3]
    if not isinstance(atoms_node, SList) or not atoms_node or getattr(atoms_node[0], "text", None) != "atoms":
        raise ParseError("expected (atoms ...)", getattr(atoms_node, "line", 0), getattr(atoms_node, "col", 0))
    atoms = []
    for a in atoms_node[1:]:
        if not isinstance(a, SList) or not a or not all(isinstance(x, _SAtom) for x in a):
            raise ParseError("malformed atom", getattr(a, "line", 0), getattr(a, "col", 0))
        kind = a[0].text
        rest = [x.text for x in a[1:]]
        try:
            if kind == "rel":
                atoms.append(PpAtom("rel", tuple(rest[1:]), rest[0] if rest else None))
            else:
                atoms.append(PpAtom(kind, tuple(rest)))
        except ValueError as exc:
            raise ParseError(str(exc), a.line, a.col) from None
    try:
        return PpFormula(free, bound, tuple(atoms))
    except ValueError as exc:
        raise ParseError(str(exc), node.line, node.col) from None


# -- semantics ----------------------------------------------------------------

def pp_holds(matrix: CnfFormula, free: Sequence[str], point: Sequence[Fraction],
             budget: int | None = None) -> bool:
    """Whether the existential closure of ``matrix`` holds at ``point``."""
    values = dict(zip(free, point))
    return bool(sat_cnf(matrix.substitute(values), budget))


def is_satisfiable(pp: PpFormula, lang: Language | None = None, budget: int | None = None) -> bool:
    return bool(sat_cnf(pp.expand(lang), budget))


@dataclass(frozen=True)
class SampleSpec:
    grid: tuple[int, ...] = (-2, -1, 0, 1, 2)
    random_points: int = 200
    max_numerator: int = 10
    max_denominator: int = 10
    reuse_probability: float = 0.3
    seed: int = 0
    max_grid_points: int = 5**5


@dataclass(frozen=True)
class Verified:
    points_checked: int

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Refuted:
    counterexample: tuple[Fraction, ...]
    in_target: bool

    def __bool__(self):
        return False

    def __str__(self):
        pt = ", ".join(format_rational(x) for x in self.counterexample)
        side = "in target but not defined by gadget" if self.in_target else "defined by gadget but not in target"
        return f"({pt}) {side}"


def sample_points(arity: int, spec: SampleSpec = SampleSpec()):
    """Integer grid (randomly thinned when too large) then random rationals."""
    rng = random.Random(spec.seed)
    grid = [tuple(Fraction(x) for x in p) for p in product(spec.grid, repeat=arity)]
    if len(grid) > spec.max_grid_points:
        grid = rng.sample(grid, spec.max_grid_points)
    yield from grid
    for _ in range(spec.random_points):
        point = []
        for _ in range(arity):
            if point and rng.random() < spec.reuse_probability:
                point.append(rng.choice(point))
            else:
                point.append(Fraction(rng.randint(-spec.max_numerator, spec.max_numerator),
                                      rng.randint(1, spec.max_denominator)))
        yield tuple(point)


def verify_gadget(g: PpFormula, target: Relation, lang: Language | None = None,
                  spec: SampleSpec = SampleSpec(), budget: int | None = None) -> Verified | Refuted:
    """Compare pp-satisfaction of ``g`` with membership in ``target`` on samples."""
    if g.arity != target.arity:
        raise ValueError(f"gadget arity {g.arity} != target arity {target.arity}")
    matrix = g.expand(lang)
    n = 0
    for point in sample_points(g.arity, spec):
        expected = target.contains(point)
        if pp_holds(matrix, g.free, point, budget) != expected:
            return Refuted(point, expected)
        n += 1
    return Verified(n)
