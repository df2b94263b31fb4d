"""Size-vs-time measurements for the Horn solver with a log-log fit."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .generators import bench_family, literal_count
from .horn import HornSolver

DEFAULT_SIZES = (100, 200, 400, 800, 1600, 3200, 6400)
SLOPE_PASS = 4.5
SLOPE_FAIL = 5.0


@dataclass(frozen=True)
class BenchRow:
    n_literals: int
    seconds: float
    sat: bool
    iterations: int
    rank: int
    max_row_bits: int


@dataclass
class BenchResult:
    family: str
    seed: int
    rows: list[BenchRow] = field(default_factory=list)

    @property
    def slope(self) -> float:
        return fit_slope([r.n_literals for r in self.rows], [r.seconds for r in self.rows])

    def status(self) -> str:
        s = self.slope
        if s <= SLOPE_PASS:
            return "pass"
        return "warn" if s <= SLOPE_FAIL else "fail"

    def table(self) -> str:
        lines = [f"{'N':>7} {'seconds':>10} {'result':>6} {'iters':>5} {'rank':>5} {'bits':>5}"]
        for r in self.rows:
            lines.append(f"{r.n_literals:>7} {r.seconds:>10.4f} {'SAT' if r.sat else 'UNSAT':>6} "
                         f"{r.iterations:>5} {r.rank:>5} {r.max_row_bits:>5}")
        lines.append(f"slope: {self.slope:.3f} ({self.status()})")
        return "\n".join(lines)


def fit_slope(sizes, seconds) -> float:
    """Least-squares slope of log(seconds) against log(size)."""
    if len(sizes) < 2:
        raise ValueError("need at least two sizes to fit a slope")
    x = np.log(np.asarray(sizes, dtype=float))
    y = np.log(np.maximum(np.asarray(seconds, dtype=float), 1e-9))
    return float(np.polyfit(x, y, 1)[0])


def run_bench(sizes=DEFAULT_SIZES, family: str = "chain", seed: int = 0, repeats: int = 3) -> BenchResult:
    """Time one instance per size; each timing is the best of ``repeats`` runs."""
    result = BenchResult(family, seed)
    for n in sizes:
        f = bench_family(n, seed, family)
        assert literal_count(f) == n
        best = float("inf")
        for _ in range(repeats):
            solver = HornSolver(f)
            t0 = time.perf_counter()
            answer = solver.solve()
            best = min(best, time.perf_counter() - t0)
        result.rows.append(BenchRow(n, best, bool(answer), solver.stats.iterations,
                                    solver.units.rank, solver.stats.max_row_bits))
    return result
