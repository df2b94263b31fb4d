"""
Solving Horn instances exactly
==============================

A clause is Horn when it has at most one equation.  The solver collects
unit equations in triangular form, deletes disequations they refute, and
promotes clauses reduced to a single equation.  Satisfiable instances get
an explicit rational witness built from powers of a base S.
"""

from csplin import parse_instance, replay, solve
from csplin.horn import HornSolver

# x + y = z, x = z and (y != 0 or w = x)
text = """
(instance (x y z w)
  (and (eq (lin 0 (1 x) (1 y) (-1 z)))
       (eq (lin 0 (1 x) (-1 z)))
       (or (ne (lin 0 (1 y))) (eq (lin 0 (1 w) (-1 x))))))
"""
f = parse_instance(text)
solver = HornSolver(f)
result = solver.solve()
print("verdict:", "SAT" if result else "UNSAT")
for event in solver.trace:
    print("  ", event.kind, "clause", event.clause, "literal", event.literal)
print("witness:", {v: str(x) for v, x in result.assignment.items()})

# A lone disequation: the free variables get S and S**2 with S = 3
f = parse_instance("(instance (x y) (ne (lin 0 (1 x) (-1 y))))")
print("x != y ->", {v: str(x) for v, x in solve(f).assignment.items()})

# x = 0, y = 0 and x != y: the last clause becomes empty
f = parse_instance("""
(instance (x y) (and (eq (lin 0 (1 x))) (eq (lin 0 (1 y))) (ne (lin 0 (1 x) (-1 y)))))
""")
result = solve(f)
print("verdict:", "SAT" if result else "UNSAT", "-", result.reason)
print("trace replays:", replay(f, result.trace))
