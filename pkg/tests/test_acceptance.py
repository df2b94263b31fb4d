"""The eight acceptance criteria, one test each.

Each test records a single ``PASS``/``FAIL`` line; the lines are printed in
the pytest terminal summary, or directly when this file is run as a script.
"""

import random
import sys
import time
from fractions import Fraction

import pytest

from csplin import catalog
from csplin.bench import SLOPE_FAIL, SLOPE_PASS, run_bench
from csplin.classifier import Verdict, classify
from csplin.formula import Clause, Language, Mode, Relation, eq, ne
from csplin.gadgets import affine_sd_gadget, hyperplane_gadget, hyperplane_relation, neq_gadget, sq_gadget
from csplin.gauss import TriangularSystem
from csplin.generators import random_equations, random_horn
from csplin.horn import HornSolver, solve
from csplin.pp import SampleSpec, verify_gadget
from csplin.semantics import sat_cnf

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = []

CORPUS_SIZE = 10_000
CORPUS_SEED = 20240601
DEFAULT_SPEC = SampleSpec()  # 5-point grid per coordinate plus 200 random rationals


def record(number: int, ok: bool, detail: str):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


_corpus_cache = {}


def corpus_run():
    """Solve the shared random corpus once; criteria 1, 2 and 8 read it."""
    if "stats" in _corpus_cache:
        return _corpus_cache["stats"]
    rng = random.Random(CORPUS_SEED)
    stats = {"n": 0, "disagree": [], "witness_fail": [], "growth_fail": [], "worst_ratio": 0.0,
             "sat": 0, "seconds": 0.0}
    t0 = time.perf_counter()
    for k in range(CORPUS_SIZE):
        f = random_horn(rng, max_vars=6, max_clauses=8, coeff_range=3)
        solver = HornSolver(f)
        res = solver.solve()
        exact = sat_cnf(f)
        stats["n"] += 1
        if bool(res) != bool(exact):
            stats["disagree"].append(k)
        if res:
            stats["sat"] += 1
            if not f.evaluate(res.assignment):
                stats["witness_fail"].append(k)
        if solver.stats.input_bits:
            ratio = solver.stats.max_row_bits / solver.stats.input_bits
            stats["worst_ratio"] = max(stats["worst_ratio"], ratio)
            if ratio > 10:
                stats["growth_fail"].append(k)
    stats["seconds"] = time.perf_counter() - t0
    _corpus_cache["stats"] = stats
    return stats


def test_criterion_1_oracle_equivalence():
    s = corpus_run()
    ok = s["n"] >= 10_000 and not s["disagree"] and s["seconds"] < 120
    record(1, ok, f"{s['n'] - len(s['disagree'])}/{s['n']} agree with exhaustive search "
                  f"({s['sat']} SAT), {s['seconds']:.1f}s (limit 120s)")
    assert ok


def test_criterion_2_witness_soundness():
    s = corpus_run()
    ok = not s["witness_fail"]
    record(2, ok, f"{len(s['witness_fail'])} witness failures over {s['sat']} SAT verdicts")
    assert ok


def test_criterion_3_catalogue():
    cases = [
        ("{x+y=z}", Language(Mode.LINEAR, (catalog.PLUS,)), Verdict.HORN),
        ("{S}", Language(Mode.LINEAR, (catalog.S_Q,)), Verdict.NP_HARD),
        ("{E}", Language(Mode.LINEAR, (catalog.EXAMPLE,)), Verdict.NP_HARD),
        ("{x=y or x=z}", Language(Mode.LINEAR, (catalog.EQ_OR,)), Verdict.ZERO_TUPLE),
        ("affine {x-y=z-w}", Language(Mode.AFFINE, (catalog.AFFINE_PARALLEL,)), Verdict.HORN),
        ("affine {H}", Language(Mode.AFFINE, (catalog.AFFINE_HARD,)), Verdict.NP_HARD),
    ]
    matched = []
    for label, lang, expected in cases:
        report = classify(lang)
        good = report.verdict is expected
        if good and expected is Verdict.NP_HARD:
            good = bool(verify_gadget(report.gadgets["S"], catalog.S_Q, lang))
        matched.append(good)
    ok = all(matched)
    misses = [c[0] for c, m in zip(cases, matched) if not m]
    record(3, ok, f"{sum(matched)}/6 verdicts match" + (f" (mismatch: {', '.join(misses)})" if misses else ""))
    assert ok


W = Relation.define("W", ("x", "y", "z", "w"),
                    [[eq((1, "x"), (-1, "y")), eq((1, "x"), (-1, "z"))], [ne((1, "w"))]])
K = Relation.define("K", ("x", "y", "z"), [[eq((1, "x"), (-2, "y"))], [ne((1, "x"), (1, "z"))]])


def test_criterion_4_gadgets():
    rng = random.Random(4)
    failures = []
    counts = {"hyperplane": 0, "neq": 0, "sq": 0, "affine_sd": 0}

    def check(kind, g, target, lang):
        res = verify_gadget(g, target, lang, DEFAULT_SPEC)
        counts[kind] += 1
        if not res:
            failures.append(f"{kind}: {res}")

    for _ in range(20):
        coeffs = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(rng.randint(1, 4))]
        check("hyperplane", hyperplane_gadget(coeffs), hyperplane_relation(coeffs), None)
    for r in (catalog.S_Q, catalog.EXAMPLE, catalog.T_REL, catalog.NONZERO, K):
        check("neq", neq_gadget(r), catalog.NEQ, Language(Mode.LINEAR, (r,)))
    for r in (catalog.S_Q, catalog.EXAMPLE, catalog.T_REL, catalog.EQ_OR, W):
        check("sq", sq_gadget(r), catalog.S_Q, Language(Mode.LINEAR, (r,)))
    for r in (catalog.AFFINE_HARD, catalog.AFFINE_SPLIT, catalog.S_Q):
        check("affine_sd", affine_sd_gadget(r, verify=False), catalog.S_Q, Language(Mode.AFFINE, (r,)))
    ok = not failures and counts == {"hyperplane": 20, "neq": 5, "sq": 5, "affine_sd": 3}
    summary = ", ".join(f"{k} {v}" for k, v in counts.items())
    record(4, ok, f"{sum(counts.values()) - len(failures)}/{sum(counts.values())} gadgets verified ({summary})"
                  + (f"; {failures[0]}" if failures else ""))
    assert ok


def test_criterion_5_incremental_vs_batch():
    rng = random.Random(5)
    good = 0
    for _ in range(1000):
        variables, eqs = random_equations(rng, max_vars=12, max_equations=12)
        inc = TriangularSystem(variables)
        for e in eqs:
            inc.add_equation(e)
        batch = TriangularSystem.from_batch(eqs, variables)
        if (inc.rank == batch.rank and all(batch.entails(r) for r in inc.rows)
                and all(inc.entails(r) for r in batch.rows)):
            good += 1
    ok = good == 1000
    record(5, ok, f"{good}/1000 equation sets: incremental and batch forms entail each other")
    assert ok


def test_criterion_6_one_independence():
    rng = random.Random(6)
    violations = 0
    premises = 0
    for _ in range(1000):
        f = random_horn(rng, const_probability=0.0)
        vs = f.variables
        if len(vs) < 2:
            f = f.with_variables(vs + ("extra",))
            vs = f.variables
        a, b = rng.sample(vs, 2)
        c, d = rng.sample(vs, 2)
        d1 = Clause((ne((1, a), (-1, b)),))
        d2 = Clause((ne((1, c), (-1, d)),))
        if solve(f.conjoin([d1])) and solve(f.conjoin([d2])):
            premises += 1
            both = f.conjoin([d1, d2])
            if not solve(both) or not sat_cnf(both):
                violations += 1
    ok = violations == 0
    record(6, ok, f"{violations} violations over 1000 formulas ({premises} with both extensions satisfiable)")
    assert ok


@pytest.mark.slow
def test_criterion_7_scaling():
    sizes = (100, 200, 400, 800, 1600, 3200, 6400)
    t0 = time.perf_counter()
    result = run_bench(sizes, "chain", seed=0, repeats=3)
    elapsed = time.perf_counter() - t0
    largest = result.rows[-1].seconds
    slope = result.slope
    ok = slope <= SLOPE_FAIL and largest < 300
    status = "PASS" if slope <= SLOPE_PASS else ("WARN" if slope <= SLOPE_FAIL else "FAIL")
    record(7, ok, f"log-log slope {slope:.2f} ({status}; pass <= {SLOPE_PASS}, fail > {SLOPE_FAIL}), "
                  f"N=6400 in {largest:.2f}s, bench total {elapsed:.1f}s")
    assert ok


def test_criterion_8_coefficient_growth():
    s = corpus_run()
    ok = not s["growth_fail"]
    record(8, ok, f"worst max-row-bits / input-bits ratio {s['worst_ratio']:.2f} (limit 10), "
                  f"{len(s['growth_fail'])} exceedances")
    assert ok


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
