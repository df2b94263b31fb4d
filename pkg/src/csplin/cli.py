"""Command-line entry point: ``csplin solve|classify|gadget|check|bench``.

Exit codes: 0 success or SAT, 1 UNSAT, 2 input error, 3 non-Horn instance,
4 gadget refuted, 5 oracle disagreement.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from dataclasses import dataclass

from . import catalog
from .bench import DEFAULT_SIZES, run_bench
from .classifier import classify, reduce_formula
from .formula import CnfFormula, Language, Mode
from .gadgets import (GadgetError, affine_sd_gadget, hyperplane_gadget, hyperplane_relation,
                      neq_gadget, sq_gadget)
from .generators import random_horn
from .horn import NotHornError, HornSolver, replay
from .pp import SampleSpec, verify_gadget
from .rational import format_rational, parse_rational
from .semantics import BudgetExceeded, default_budget, sample_oracle, sat_cnf
from .syntax import ParseError, format_clause, parse_document

EXIT_SAT, EXIT_UNSAT, EXIT_INPUT, EXIT_NOT_HORN, EXIT_REFUTED, EXIT_DISAGREE = range(6)


@dataclass(frozen=True)
class RunConfig:
    mode: Mode | None = None
    seed: int = 0
    budget: int = 10**6
    trials: int = 200
    format: str = "text"

    @classmethod
    def from_args(cls, args) -> RunConfig:
        # an explicit flag beats the environment, which beats the default
        budget = args.budget if args.budget is not None else default_budget()
        return cls(Mode(args.mode) if args.mode else None, args.seed, budget, args.trials, args.format)


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _document(path: str, cfg: RunConfig):
    text = _read(path)
    try:
        return parse_document(text, cfg.mode)
    except (ParseError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _instance(path: str, cfg: RunConfig) -> CnfFormula:
    doc = _document(path, cfg)
    if len(doc.instances) != 1:
        raise InputError(f"{path}: expected exactly one instance, found {len(doc.instances)}")
    return doc.instances[0]


def _assignment_lines(assignment) -> list[str]:
    return [f"{v} = {format_rational(x)}" for v, x in assignment.items()]


# -- commands -------------------------------------------------------------------

def cmd_solve(args, cfg: RunConfig, out) -> int:
    f = _instance(args.file, cfg)
    try:
        solver = HornSolver(f)
    except NotHornError as exc:
        print(f"NOT-HORN clause {exc.clause_index}: {format_clause(exc.clause)}", file=out)
        return EXIT_NOT_HORN
    res = solver.solve()
    structured = cfg.format == "structured"
    if res:
        print("result: SAT" if structured else "SAT", file=out)
        if args.witness or args.check:
            for line in _assignment_lines(res.assignment):
                print(f"value: {line}" if structured else f"  {line}", file=out)
        if args.check:
            ok = f.evaluate(res.assignment)
            print(f"check: {'ok' if ok else 'FAILED'}", file=out)
            if not ok:
                return EXIT_DISAGREE
        print(f"iterations: {solver.stats.iterations}", file=out)
        return EXIT_SAT
    print("result: UNSAT" if structured else "UNSAT", file=out)
    print(f"reason: {res.reason}", file=out)
    for ev in res.trace:
        if ev.kind == "satisfied":
            continue
        lit = "" if ev.literal is None else f" literal {ev.literal}"
        print(f"trace: {ev.iteration} {ev.kind} clause {ev.clause}{lit}", file=out)
    if args.check and not replay(f, res.trace):
        print("check: trace replay FAILED", file=out)
        return EXIT_DISAGREE
    return EXIT_UNSAT


def cmd_classify(args, cfg: RunConfig, out) -> int:
    doc = _document(args.file, cfg)
    if not doc.relations:
        raise InputError(f"{args.file}: no relations declared")
    try:
        lang = doc.language
        report = classify(lang, cfg.budget)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(report.to_structured() if cfg.format == "structured" else report.to_text(), file=out)
    return EXIT_SAT


def _pick_relation(doc, name: str | None):
    if not doc.relations:
        raise InputError("no relations declared")
    if name is None:
        return doc.relations[0]
    for r in doc.relations:
        if r.name == name:
            return r
    raise InputError(f"no relation named {name!r}")


def cmd_gadget(args, cfg: RunConfig, out) -> int:
    spec = SampleSpec(seed=cfg.seed, random_points=cfg.trials)
    try:
        if args.kind == "hyperplane":
            if not args.args:
                raise InputError("hyperplane needs at least one coefficient")
            try:
                coeffs = [parse_rational(a) for a in args.args]
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(str(exc)) from None
            g = hyperplane_gadget(coeffs)
            target, lang = hyperplane_relation(coeffs), None
        else:
            if len(args.args) != 1:
                raise InputError(f"{args.kind} needs one relation file")
            doc = _document(args.args[0], cfg)
            r = _pick_relation(doc, args.relation)
            if args.kind == "neq":
                lang, target = Language(Mode.LINEAR, (r,)), catalog.NEQ
                g = neq_gadget(r)
            elif args.kind == "sq":
                lang, target = Language(Mode.LINEAR, (r,)), catalog.S_Q
                g = sq_gadget(r, reduce_formula(r, cfg.budget).reduced)
            else:
                lang, target = Language(Mode.AFFINE, (r,)), catalog.S_Q
                g = affine_sd_gadget(r, reduce_formula(r, cfg.budget).reduced, verify=False)
    except GadgetError as exc:
        raise InputError(str(exc)) from None
    print(g.to_text(), file=out)
    if args.verify:
        res = verify_gadget(g, target, lang, spec, cfg.budget)
        if not res:
            print(f"Refuted: {res}", file=out)
            return EXIT_REFUTED
        print(f"Verified: {res.points_checked} points", file=out)
    return EXIT_SAT


def _cross_check(f: CnfFormula, cfg: RunConfig, seed: int) -> str | None:
    """None when solver, exhaustive search and sampling agree; else a description."""
    exact = bool(sat_cnf(f, cfg.budget))
    if f.is_horn():
        res = HornSolver(f).solve()
        if bool(res) != exact:
            return f"solver says {'SAT' if res else 'UNSAT'}, search says {'SAT' if exact else 'UNSAT'}"
        if res and not f.evaluate(res.assignment):
            return "solver witness fails evaluation"
        if not res and not replay(f, res.trace):
            return "solver trace does not replay"
    if sample_oracle(f, cfg.trials, seed) and not exact:
        return "sampling found a model the search missed"
    return None


def cmd_check(args, cfg: RunConfig, out) -> int:
    if args.file:
        formulas = _document(args.file, cfg).instances
        if not formulas:
            raise InputError(f"{args.file}: no instances")
    else:
        rng = random.Random(cfg.seed)
        formulas = [random_horn(rng) for _ in range(args.count)]
    bad = 0
    for k, f in enumerate(formulas):
        problem = _cross_check(f, cfg, cfg.seed + k)
        if problem:
            bad += 1
            print(f"disagreement on instance {k}: {problem}", file=out)
    print(f"agreements: {len(formulas) - bad}/{len(formulas)}", file=out)
    return EXIT_DISAGREE if bad else EXIT_SAT


def cmd_bench(args, cfg: RunConfig, out) -> int:
    result = run_bench(args.sizes or DEFAULT_SIZES, args.family, cfg.seed, args.repeats)
    if cfg.format == "structured":
        for r in result.rows:
            print(f"row: {r.n_literals} {r.seconds:.6f} {'SAT' if r.sat else 'UNSAT'} {r.iterations}", file=out)
        print(f"slope: {result.slope:.4f}", file=out)
        print(f"status: {result.status()}", file=out)
    else:
        print(result.table(), file=out)
    return EXIT_SAT


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=[m.value for m in Mode], help="override the file's mode header")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None,
                        help="branch budget for exhaustive search (default: $CSPLIN_BUDGET or 10^6)")
    common.add_argument("--trials", type=int, default=200)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="csplin", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="decide a Horn instance")
    s.add_argument("file")
    s.add_argument("--witness", action="store_true", help="print the satisfying assignment")
    s.add_argument("--check", action="store_true", help="re-check the witness or replay the trace")
    s.set_defaults(run=cmd_solve)

    c = sub.add_parser("classify", parents=[common], help="classify a language")
    c.add_argument("file")
    c.set_defaults(run=cmd_classify)

    g = sub.add_parser("gadget", parents=[common], help="emit a pp-definition")
    g.add_argument("kind", choices=("hyperplane", "neq", "sq", "affine-sd"))
    g.add_argument("args", nargs="*", help="coefficients (hyperplane) or a relation file")
    g.add_argument("--relation", help="relation name when the file declares several")
    g.add_argument("--verify", action="store_true")
    g.set_defaults(run=cmd_gadget)

    k = sub.add_parser("check", parents=[common], help="cross-check solver and oracles")
    k.add_argument("file", nargs="?")
    k.add_argument("--count", type=int, default=1000, help="random instances when no file is given")
    k.set_defaults(run=cmd_check)

    b = sub.add_parser("bench", parents=[common], help="time the solver across sizes")
    b.add_argument("--sizes", type=int, nargs="+")
    b.add_argument("--family", choices=("chain", "dense"), default="chain")
    b.add_argument("--repeats", type=int, default=3)
    b.set_defaults(run=cmd_bench)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = RunConfig.from_args(args)
    try:
        return args.run(args, cfg, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"error: search budget exhausted ({exc})", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
