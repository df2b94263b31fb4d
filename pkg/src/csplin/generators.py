"""Seeded random instances for cross-checks, property tests and benchmarks."""

from __future__ import annotations

import random
from fractions import Fraction

from .formula import Clause, CnfFormula, LinearTerm, Literal


def random_term(rng: random.Random, variables, coeff_range: int = 3, max_vars: int = 3,
                const_probability: float = 0.0) -> LinearTerm:
    k = rng.randint(1, min(max_vars, len(variables)))
    pool = [c for c in range(-coeff_range, coeff_range + 1) if c]
    pairs = [(v, rng.choice(pool)) for v in rng.sample(list(variables), k)]
    const = rng.randint(-coeff_range, coeff_range) if rng.random() < const_probability else 0
    return LinearTerm(pairs, const)


def random_horn(rng: random.Random, max_vars: int = 6, max_clauses: int = 8, coeff_range: int = 3,
                const_probability: float = 0.2) -> CnfFormula:
    """A Horn CNF: each clause has at most one equation and up to three disequations."""
    n = rng.randint(1, max_vars)
    variables = tuple(f"x{i}" for i in range(n))
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        lits = []
        if rng.random() < 0.6:
            lits.append(Literal.eq(random_term(rng, variables, coeff_range, 3, const_probability)))
        for _ in range(rng.randint(0 if lits else 1, 3 if lits else 2)):
            lits.append(Literal.ne(random_term(rng, variables, coeff_range, 3, const_probability)))
        clauses.append(lits)
    return CnfFormula.build(clauses, variables)


def random_equations(rng: random.Random, max_vars: int = 12, max_equations: int = 12,
                     coeff_range: int = 3, max_terms: int = 4) -> tuple[tuple[str, ...], list[LinearTerm]]:
    n = rng.randint(1, max_vars)
    variables = tuple(f"x{i}" for i in range(n))
    eqs = [random_term(rng, variables, coeff_range, max_terms) for _ in range(rng.randint(1, max_equations))]
    return variables, eqs


def bench_family(n_literals: int, seed: int = 0, family: str = "chain") -> CnfFormula:
    """Horn instances of exactly ``n_literals`` literals.

    ``chain``: seed equations x_i = x_{i+1} on a few positions, implications
    (x_i != x_{i+1} or x_{i+1} = x_{i+2}) that extend them in waves, random
    implications (x_a != x_b or x_c = x_d), and
    disequality clauses (x_a != x_b or x_c != x_d).  ``dense``: the same
    shapes over terms with three variables and small coefficients.
    """
    if family not in ("chain", "dense"):
        raise ValueError(f"unknown benchmark family {family!r}")
    rng = random.Random(seed * 1_000_003 + n_literals)
    n = max(4, n_literals // 4)
    xs = [f"x{i}" for i in range(n)]

    def two(a, b):
        return LinearTerm(((a, 1), (b, -1)))

    def term():
        if family == "chain":
            a, b = rng.sample(xs, 2)
            return two(a, b)
        vs = rng.sample(xs, 3)
        return LinearTerm((v, rng.choice((-2, -1, 1, 2))) for v in vs)

    clauses: list[list[Literal]] = []
    used = 0
    for i in rng.sample(range(n - 1), max(1, n // 16)):
        clauses.append([Literal.eq(two(xs[i], xs[i + 1]))])
        used += 1
    while used < n_literals:
        r = rng.random()
        if r < 0.45:
            i = rng.randrange(n - 2)
            lits = [Literal.ne(two(xs[i], xs[i + 1])), Literal.eq(two(xs[i + 1], xs[i + 2]))]
        elif r < 0.6:
            lits = [Literal.ne(two(*rng.sample(xs, 2))), Literal.eq(term())]
        else:
            lits = [Literal.ne(term()), Literal.ne(term())]
        lits = lits[: n_literals - used]
        if len(Clause(tuple(lits))) != len(lits):
            continue
        used += len(lits)
        clauses.append(lits)
    return CnfFormula(tuple(Clause(tuple(c)) for c in clauses), tuple(xs))


def literal_count(f: CnfFormula) -> int:
    return sum(len(c) for c in f.clauses)


def random_point(rng: random.Random, variables, box: int = 5) -> dict[str, Fraction]:
    return {v: Fraction(rng.randint(-box, box), rng.randint(1, box)) for v in variables}
