"""Constructive pp-definitions behind the hardness side of the classification.

* ``hyperplane_gadget``: r1*x1 + ... + rl*xl = 0 from x + y = z alone.
* ``neq_gadget``: x != y from a relation avoiding the zero tuple.
* ``t_gadget`` / ``sq_gadget``: x != 0 and (y = 0 or x = y), then
  S(u, v, w) = v != w and (u = v or u = w), from a non-Horn reduced relation.
* ``affine_sd_gadget``: S over (Q; a - b + c) via the two independence
  conditions on a derived relation Q.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd, lcm
from typing import Iterable, Sequence

from . import catalog
from .formula import Clause, CnfFormula, Language, LinearTerm, Literal, Mode, Relation
from .pp import (PpAtom, PpBuilder, PpFormula, SampleSpec, conjoin, identify,
                 is_satisfiable, pp_holds, project, verify_gadget)
from .semantics import contains_zero_tuple, negated_clause, sat_cnf

log = logging.getLogger(__name__)


class GadgetError(ValueError):
    """A construction's precondition does not hold for the given input."""


# -- linear combinations over x + y = z ---------------------------------------

def integer_pairs(pairs: Iterable[tuple[str, object]]) -> list[tuple[str, int]]:
    """Merge repeated variables, scale to coprime integers, drop zeros."""
    acc: dict[str, Fraction] = {}
    for v, c in pairs:
        acc[v] = acc.get(v, Fraction(0)) + Fraction(c)
    acc = {v: c for v, c in acc.items() if c}
    if not acc:
        return []
    den = 1
    for c in acc.values():
        den = lcm(den, c.denominator)
    ints = {v: int(c * den) for v, c in acc.items()}
    g = 0
    for c in ints.values():
        g = gcd(g, c)
    return [(v, c // g) for v, c in ints.items()]


def _chain(b: PpBuilder, x: str, m: int) -> str:
    """A variable equal to m*x (m >= 1), via u_{i+1} = x + u_i."""
    cur = x
    for _ in range(m - 1):
        nxt = b.fresh("u")
        b.add("sum", x, cur, nxt)
        cur = nxt
    return cur


def _atomic(b: PpBuilder, pairs: list[tuple[str, int]]) -> bool:
    """Emit a single atom when the equation already has atomic shape."""
    cs = sorted(c for _, c in pairs)
    if len(pairs) == 2 and cs == [-1, 1]:
        b.add("eq", pairs[0][0], pairs[1][0])
        return True
    if len(pairs) == 3 and cs in ([-1, 1, 1], [-1, -1, 1]):
        major = 1 if cs == [-1, 1, 1] else -1
        lhs = [v for v, c in pairs if c == major]
        rhs = [v for v, c in pairs if c != major]
        b.add("sum", lhs[0], lhs[1], rhs[0])
        return True
    return False


def _two(b: PpBuilder, x1: str, r1: int, x2: str, r2: int):
    u = _chain(b, x1, abs(r1))
    v = _chain(b, x2, abs(r2))
    if (r1 > 0) == (r2 > 0):
        b.add("sum", u, v, b.zero())
    else:
        b.add("eq", u, v)


def _three(b: PpBuilder, x1: str, r1: int, x2: str, r2: int, w: str):
    """r1*x1 + r2*x2 + w = 0."""
    u = _chain(b, x1, abs(r1))
    v = _chain(b, x2, abs(r2))
    if r1 > 0 and r2 > 0:
        s = b.fresh("s")
        b.add("sum", u, v, s)
        b.add("sum", s, w, b.zero())
    elif r1 < 0 and r2 < 0:
        b.add("sum", u, v, w)
    elif r1 > 0:
        b.add("sum", u, w, v)
    else:
        b.add("sum", v, w, u)


def linear_zero(b: PpBuilder, pairs: list[tuple[str, int]], top: bool = True):
    """Emit atoms defining sum(c * v) = 0 for nonzero integer coefficients."""
    if top and _atomic(b, pairs):
        return
    if not pairs:
        return
    if len(pairs) == 1:
        b.add("zero", pairs[0][0])
        return
    if len(pairs) == 2:
        (x1, r1), (x2, r2) = pairs
        _two(b, x1, r1, x2, r2)
        return
    (x1, r1), (x2, r2) = pairs[:2]
    u = b.fresh("u")
    v = b.fresh("v")
    _three(b, x1, r1, x2, r2, u)
    linear_zero(b, pairs[2:] + [(v, 1)], top=False)
    b.add("sum", u, v, b.zero())


def hyperplane_gadget(coeffs: Sequence, variables: Sequence[str] | None = None) -> PpFormula:
    """pp-definition of {x : sum(r_i * x_i) = 0} over x + y = z (and 0)."""
    if not coeffs:
        raise GadgetError("need at least one coefficient")
    variables = tuple(variables or (f"x{i + 1}" for i in range(len(coeffs))))
    b = PpBuilder(variables)
    linear_zero(b, integer_pairs(zip(variables, coeffs)))
    return b.build()


def hyperplane_relation(coeffs: Sequence, variables: Sequence[str] | None = None) -> Relation:
    variables = tuple(variables or (f"x{i + 1}" for i in range(len(coeffs))))
    t = LinearTerm(zip(variables, coeffs))
    return Relation.define("hyperplane", variables, [[Literal.eq(t)]] if not t.is_zero() else [])


def _neq_term(b: PpBuilder, t: LinearTerm):
    """t != 0 with an auxiliary variable tied to t."""
    pairs = integer_pairs(t.items())
    cs = sorted(c for _, c in pairs)
    if len(pairs) == 1:
        b.add("neq", pairs[0][0], b.zero())
    elif len(pairs) == 2 and cs == [-1, 1]:
        b.add("neq", pairs[0][0], pairs[1][0])
    else:
        a = b.fresh("a")
        linear_zero(b, integer_pairs([(a, 1)] + [(v, -c) for v, c in pairs]))
        b.add("neq", a, b.zero())


# -- disequality from a zero-avoiding relation --------------------------------

def _require_homogeneous(r: Relation):
    for l in r.definition.literals():
        if l.term.const:
            raise GadgetError(f"relation {r.name} has a constant term; outside (Q;+)")


def _unary_section(pp: PpFormula, lang: Language) -> str:
    """Which of Q, Q\\{0}, {0}, {} a unary pp-formula defines."""
    matrix = pp.expand(lang)
    at = {x: pp_holds(matrix, pp.free, (Fraction(x),)) for x in (0, 1, 2, Fraction(-1, 3))}
    if len({at[1], at[2], at[Fraction(-1, 3)]}) != 1:
        raise AssertionError(f"unary section {pp} is not one of the four possible sets")
    return {(True, True): "all", (False, True): "nonzero",
            (True, False): "zero", (False, False): "empty"}[at[0], at[1]]


def neq_gadget(r: Relation, names: Sequence[str] = ("x", "y")) -> PpFormula:
    """pp-definition of x != y over {r, x + y = z, 0} (linear mode)."""
    _require_homogeneous(r)
    lang = Language(Mode.LINEAR, (r,))
    if not sat_cnf(r.definition):
        raise GadgetError(f"relation {r.name} is empty")
    if contains_zero_tuple(r):
        raise GadgetError(f"relation {r.name} contains the zero tuple")
    k = r.arity
    coords = tuple(f"c{i + 1}" for i in range(k + 1))
    s = PpFormula(coords, (), (PpAtom("rel", coords[:k], r.name), PpAtom("zero", (coords[k],))))
    # identify coordinates while that keeps the relation non-empty
    while True:
        for a, b in combinations(range(s.arity), 2):
            cand = identify(s, s.free[a], s.free[b])
            if is_satisfiable(cand, lang):
                log.debug("identified %s with %s", s.free[b], s.free[a])
                s = cand
                break
        else:
            break
    if s.arity < 2:
        raise AssertionError("descent reached a unary relation with an empty diagonal")
    x1, x2 = s.free[0], s.free[1]
    section_t = project(conjoin(s, PpAtom("zero", (x2,))), [x1])
    kind_t = _unary_section(section_t, lang)
    if kind_t in ("all", "zero"):
        raise AssertionError("first section contains 0 although x1 = x2 is unsatisfiable")
    if kind_t == "nonzero":
        phi = section_t
    else:
        section_u = project(s, [x2])
        if _unary_section(section_u, lang) != "nonzero":
            raise AssertionError("second section is not Q \\ {0}")
        phi = section_u
    return nonzero_to_neq(phi, names)


def nonzero_to_neq(phi: PpFormula, names: Sequence[str] = ("x", "y")) -> PpFormula:
    """exists u, y'. phi(u) and y + y' = 0 and x + y' = u."""
    x, y = names
    b = PpBuilder((x, y))
    u = b.fresh("u")
    yp = b.fresh("yneg")
    b.inline(phi, [u])
    b.add("sum", y, yp, b.zero())
    b.add("sum", x, yp, u)
    return b.build()


# -- S from a non-Horn reduced relation (linear) ------------------------------

@dataclass(frozen=True)
class GadgetWitness:
    """Points p, q of R singling out positive literals l1, l2 of clause C."""

    relation: str
    clause_index: int
    l1: int
    l2: int
    p: tuple[Fraction, ...]
    q: tuple[Fraction, ...]

    def validate(self, reduced: CnfFormula) -> bool:
        clause = reduced.clauses[self.clause_index]
        params = reduced.variables
        for point, keep in ((self.p, self.l1), (self.q, self.l2)):
            values = dict(zip(params, point))
            if not reduced.evaluate(values):
                return False
            for j, lit in enumerate(clause.literals):
                if lit.holds(values) != (j == keep):
                    return False
        return True


def _reduced_of(r: Relation, reduced) -> CnfFormula:
    if reduced is None:
        from .classifier import reduce_formula
        reduced = reduce_formula(r.definition)
    return getattr(reduced, "reduced", reduced)


def two_positive_clause(reduced: CnfFormula) -> tuple[int, int, int]:
    for i, c in enumerate(reduced.clauses):
        pos = [j for j, l in enumerate(c.literals) if l.positive]
        if len(pos) >= 2:
            return i, pos[0], pos[1]
    raise GadgetError("no clause with two positive literals (the definition is Horn)")


def _single_out(reduced: CnfFormula, clause: Clause, keep: int) -> tuple[Fraction, ...]:
    """A point of ``reduced`` satisfying literal ``keep`` and no other of ``clause``."""
    others = [c for j, c in enumerate(negated_clause(clause)) if j != keep]
    probe = reduced.conjoin(others)
    k = len(reduced.variables)
    if 5 ** k <= 3125:
        for pt in product((0, 1, -1, 2, -2), repeat=k):
            values = dict(zip(reduced.variables, map(Fraction, pt)))
            if probe.evaluate(values):
                return tuple(map(Fraction, pt))
    res = sat_cnf(probe)
    if not res:
        raise GadgetError("no point singles out the literal: the definition is not reduced")
    return tuple(res.assignment[v] for v in reduced.variables)


def find_sq_witness(r: Relation, reduced=None) -> GadgetWitness:
    reduced = _reduced_of(r, reduced)
    i, j1, j2 = two_positive_clause(reduced)
    clause = reduced.clauses[i]
    w = GadgetWitness(r.name, i, j1, j2, _single_out(reduced, clause, j1), _single_out(reduced, clause, j2))
    if not w.validate(reduced):
        raise AssertionError("witness points fail re-validation")
    return w


def t_gadget(r: Relation, reduced=None, witness: GadgetWitness | None = None,
             names: Sequence[str] = ("x", "y")) -> PpFormula:
    """pp-definition of x != 0 and (y = 0 or x = y) over {r, +, !=}."""
    _require_homogeneous(r)
    reduced = _reduced_of(r, reduced)
    witness = witness or find_sq_witness(r, reduced)
    clause = reduced.clauses[witness.clause_index]
    x, y = names
    b = PpBuilder((x, y))
    b.add("neq", x, b.zero())
    zs = [b.fresh("z") for _ in range(r.arity)]
    for zi, pi, qi in zip(zs, witness.p, witness.q):
        linear_zero(b, integer_pairs([(zi, 1), (x, -pi), (y, -(qi - pi))]))
    mapping = dict(zip(reduced.variables, zs))
    for j, lit in enumerate(clause.literals):
        if j in (witness.l1, witness.l2):
            continue
        t = lit.term.rename(mapping)
        if lit.positive:
            _neq_term(b, t)
        else:
            linear_zero(b, integer_pairs(t.items()))
    b.add("rel", *zs, name=r.name)
    return b.build()


def t_to_s(t: PpFormula, names: Sequence[str] = ("u", "v", "w")) -> PpFormula:
    """exists x, y. x + v = w and y + v = u and T(x, y)."""
    u, v, w = names
    b = PpBuilder((u, v, w))
    x = b.fresh("x")
    y = b.fresh("y")
    b.add("sum", x, v, w)
    b.add("sum", y, v, u)
    b.inline(t, [x, y])
    return b.build()


def sq_gadget(r: Relation, reduced=None, names: Sequence[str] = ("u", "v", "w")) -> PpFormula:
    """pp-definition of S over {r, +, !=} from a non-Horn reduced definition."""
    reduced = _reduced_of(r, reduced)
    return t_to_s(t_gadget(r, reduced), names)


# -- affine combinations over a - b + c = d -----------------------------------

def affine_zero(b: PpBuilder, pairs: list[tuple[str, int]]):
    """Emit atoms for sum(c * v) = 0 where the integer coefficients sum to 0.

    Both sides are accumulated as P_{t+1} = P_t - base + next, so each side
    equals its multiset sum minus (M - 1) * base.
    """
    if not pairs:
        return
    if sum(c for _, c in pairs) != 0:
        raise GadgetError("coefficients of an affine equation must sum to zero")
    cs = sorted(c for _, c in pairs)
    if cs == [-1, 1]:
        b.add("eq", pairs[0][0], pairs[1][0])
        return
    pos = [v for v, c in pairs if c > 0 for _ in range(c)]
    neg = [v for v, c in pairs if c < 0 for _ in range(-c)]
    if len(pos) == 2 and len(set(pos + neg)) == 4:
        b.add("fatom", pos[0], neg[0], pos[1], neg[1])
        return
    base = pos[0]

    def accumulate(side):
        cur = side[0]
        for nxt in side[1:]:
            out = b.fresh("f")
            b.add("fatom", cur, base, nxt, out)
            cur = out
        return cur

    b.add("eq", accumulate(pos), accumulate(neg))


def _affine_neq_term(b: PpBuilder, t: LinearTerm):
    pairs = integer_pairs(t.items())
    cs = sorted(c for _, c in pairs)
    if len(pairs) == 2 and cs == [-1, 1]:
        b.add("neq", pairs[0][0], pairs[1][0])
        return
    # t = c_m * x_m + rest; tie w to -rest / c_m, then x_m != w
    (xm, cm), rest = pairs[0], pairs[1:]
    w = b.fresh("w")
    affine_zero(b, integer_pairs([(w, cm)] + rest))
    b.add("neq", xm, w)


def _solved_for(lit: Literal, var: str, new: str) -> list[tuple[str, Fraction]]:
    """Pairs for ``new`` replacing ``var`` in the literal's equation."""
    return [(new if v == var else v, c) for v, c in lit.term.items()]


def affine_q(r: Relation, reduced=None):
    """The relation Q of the affine hardness argument and its key indices.

    Q(x..., y1, y2) is R and the negations of the other literals of the
    clause, with y1 (y2) equal to x_a (x_b) exactly when l1 (l2) holds.
    Returns ``(Q, (a, y1, b, y2))``.
    """
    reduced = _reduced_of(r, reduced)
    i, j1, j2 = two_positive_clause(reduced)
    clause = reduced.clauses[i]
    l1, l2 = clause.literals[j1], clause.literals[j2]
    a = l1.term.variables()[0]
    vars2 = l2.term.variables()
    bvar = next((v for v in vars2 if v != a), vars2[0])
    params = reduced.variables
    b = PpBuilder(params + ("_y1", "_y2"))
    b.add("rel", *params, name=r.name)
    for j, lit in enumerate(clause.literals):
        if j in (j1, j2):
            continue
        if lit.positive:
            _affine_neq_term(b, lit.term)
        else:
            affine_zero(b, integer_pairs(lit.term.items()))
    affine_zero(b, integer_pairs(_solved_for(l1, a, "_y1")))
    affine_zero(b, integer_pairs(_solved_for(l2, bvar, "_y2")))
    return b.build(), (a, "_y1", bvar, "_y2")


def _neq(u, v) -> PpAtom:
    return PpAtom("neq", (u, v))


def check_indep1(q: PpFormula, i: str, j: str, k: str, lang: Language) -> tuple[bool, bool, bool]:
    """(Q and xi != xj sat, Q and xi != xk sat, Q and both unsat)."""
    return (is_satisfiable(conjoin(q, _neq(i, j)), lang),
            is_satisfiable(conjoin(q, _neq(i, k)), lang),
            not is_satisfiable(conjoin(q, _neq(i, j), _neq(i, k)), lang))


def check_indep2(q: PpFormula, i: str, j: str, k: str, l: str, lang: Language) -> tuple[bool, bool, bool]:
    return (is_satisfiable(conjoin(q, _neq(i, j)), lang),
            is_satisfiable(conjoin(q, _neq(k, l)), lang),
            not is_satisfiable(conjoin(q, _neq(i, j), _neq(k, l)), lang))


def indep1_gadget(q: PpFormula, i: str, j: str, k: str, lang: Language,
                  names: Sequence[str] = ("x1", "x2", "x3"), check: bool = True) -> PpFormula:
    """R3(x1, x2, x3) = exists rest. Q and x2 != x3, with (x1, x2, x3) = (i, j, k)."""
    if check and not all(check_indep1(q, i, j, k, lang)):
        raise GadgetError(f"independence conditions fail for ({i}, {j}, {k})")
    return project(conjoin(q, _neq(j, k)), [i, j, k], names)


def indep2_to_indep1(q: PpFormula, i: str, j: str, k: str, l: str):
    """phi = R4(x, y, x', y') and R4(z', y', z, y) and x' != z'.

    R4 projects Q onto (i, j, k, l).  Returns phi and the triple (y, x, z)
    for which phi meets the single-index independence conditions.
    """
    r4 = project(q, [i, j, k, l], ("a1", "a2", "a3", "a4"))
    b = PpBuilder(("x", "y", "z", "xp", "yp", "zp"))
    b.inline(r4, ["x", "y", "xp", "yp"])
    b.inline(r4, ["zp", "yp", "z", "y"])
    b.add("neq", "xp", "zp")
    return b.build(), ("y", "x", "z")


def affine_sd_gadget(r: Relation, reduced=None, names: Sequence[str] = ("x1", "x2", "x3"),
                     verify: bool = True, spec: SampleSpec = SampleSpec()) -> PpFormula:
    """pp-definition of S over {r, a - b + c = d, !=} (affine mode)."""
    lang = Language(Mode.AFFINE, (r,))
    reduced = _reduced_of(r, reduced)
    q, (a, y1, bvar, y2) = affine_q(r, reduced)
    if a == bvar:
        conditions = check_indep1(q, a, y1, y2, lang)
        if not all(conditions):
            raise GadgetError(f"independence conditions fail: {conditions}")
        gadget = indep1_gadget(q, a, y1, y2, lang, names, check=False)
    else:
        conditions = check_indep2(q, a, y1, bvar, y2, lang)
        if not all(conditions):
            raise GadgetError(f"independence conditions fail: {conditions}")
        phi, (i, j, k) = indep2_to_indep1(q, a, y1, bvar, y2)
        gadget = indep1_gadget(phi, i, j, k, lang, names)
    if verify:
        result = verify_gadget(gadget, catalog.S_Q, lang, spec)
        if not result:
            raise AssertionError(f"affine S gadget refuted at {result}")
    return gadget


# -- bounded search for an affine disequality definition ----------------------

def _labelings(k: int):
    """Maps of k coordinates to x, y or fresh names, fresh names in first-use order."""
    def rec(prefix, nfresh):
        if len(prefix) == k:
            if "x" in prefix and "y" in prefix:
                yield tuple(prefix)
            return
        for lab in ["x", "y"] + [f"_b{n}" for n in range(nfresh + 1)]:
            yield from rec(prefix + [lab], nfresh + (lab == f"_b{nfresh}"))
    yield from rec([], 0)


def search_neq_definition(r: Relation, bound: int = 2000, spec: SampleSpec = SampleSpec()) -> PpFormula | None:
    """Look for x != y as exists b. r(args) with args drawn from x, y, b...

    Returns the first verified candidate, or None if none is found within
    ``bound`` candidates.
    """
    lang = Language(Mode.AFFINE, (r,))
    probes = [((0, 0), False), ((0, 1), True), ((1, 0), True), ((3, -2), True), ((5, 5), False)]
    for n, labels in enumerate(_labelings(r.arity)):
        if n >= bound:
            break
        fresh = tuple(dict.fromkeys(l for l in labels if l not in ("x", "y")))
        cand = PpFormula(("x", "y"), fresh, (PpAtom("rel", labels, r.name),))
        matrix = cand.expand(lang)
        if all(pp_holds(matrix, cand.free, tuple(map(Fraction, pt))) == want for pt, want in probes):
            if verify_gadget(cand, catalog.NEQ, lang, spec):
                return cand
    return None
