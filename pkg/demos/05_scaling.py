"""
How the solver scales
=====================

Random Horn instances with equality chains and disequation clauses, timed
at doubling sizes.  The slope of the log-log fit estimates the exponent.
"""

import numpy as np

from csplin.bench import run_bench

result = run_bench((100, 200, 400, 800, 1600, 3200, 6400), family="chain", repeats=3)
print(result.table())

# the same fit by hand
n = np.array([r.n_literals for r in result.rows], dtype=float)
t = np.array([r.seconds for r in result.rows])
slope, intercept = np.polyfit(np.log(n), np.log(t), 1)
print(f"t ~ {np.exp(intercept):.2e} * N^{slope:.2f}")

dense = run_bench((100, 400, 1600, 6400), family="dense", repeats=1)
print(dense.table())
