"""
Hardness over (Q; a - b + c)
============================

Affine languages are invariant under x -> a*x + b.  From a non-Horn reduced
relation we build Q, check the two-index independence conditions, fold
them into the single-index ones and project to S.
"""

from csplin import catalog
from csplin.formula import Language, Mode
from csplin.gadgets import affine_q, affine_sd_gadget, check_indep2, search_neq_definition
from csplin.pp import verify_gadget

r = catalog.AFFINE_HARD
lang = Language(Mode.AFFINE, (r,))
q, (a, y1, b, y2) = affine_q(r)
print("Q has", q.arity, "free variables; key indices", (a, y1, b, y2))
print("conditions (sat, sat, unsat):", check_indep2(q, a, y1, b, y2, lang))

g = affine_sd_gadget(r)
print("S gadget:", g)
print("  ", verify_gadget(g, catalog.S_Q, lang))

# x != y is a primitive here; a bounded search sometimes finds a definition
neq = search_neq_definition(r)
print("x != y by search:", neq if neq else "not found within bound")
