"""
Building and checking pp-gadgets
================================

Gadgets are existential conjunctions of atoms.  Each one is checked by
comparing, on a grid and on random rationals, membership in the target
relation with satisfiability of the gadget's matrix.
"""

from fractions import Fraction

from csplin import catalog
from csplin.formula import Language, Mode
from csplin.gadgets import hyperplane_gadget, hyperplane_relation, neq_gadget, sq_gadget, t_gadget
from csplin.pp import pp_holds, verify_gadget

# 2x = y over x + y = z alone
g = hyperplane_gadget((2, -1))
print("2x = y:", g)
print("  ", verify_gadget(g, hyperplane_relation((2, -1))))

# a longer one with rational coefficients
coeffs = (Fraction(1, 2), Fraction(-3, 4), 2)
g = hyperplane_gadget(coeffs)
print(f"{len(g.atoms)} atoms for {coeffs}:", verify_gadget(g, hyperplane_relation(coeffs)))

# x != y from a relation that misses the zero tuple
lang = Language(Mode.LINEAR, (catalog.EXAMPLE,))
g = neq_gadget(catalog.EXAMPLE)
print("x != y:", g)
print("  ", verify_gadget(g, catalog.NEQ, lang))

# the intermediate T(x, y) = x != 0 and (y = 0 or x = y), printed as a table
t = t_gadget(catalog.EXAMPLE)
matrix = t.expand(lang)
print("T on {-2..2}^2 (rows x, columns y):")
for x in range(-2, 3):
    row = "".join("1" if pp_holds(matrix, t.free, (Fraction(x), Fraction(y))) else "." for y in range(-2, 3))
    print(f"  {x:+d} {row}")

s = sq_gadget(catalog.EXAMPLE)
print("S gadget:", verify_gadget(s, catalog.S_Q, lang))
