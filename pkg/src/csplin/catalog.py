"""Standard relations used as targets, fixtures and demo material."""

from .formula import Language, Mode, Relation, diff, eq, ne, term

# x + y = z
PLUS = Relation.define("plus", ("x", "y", "z"), [[eq((1, "x"), (1, "y"), (-1, "z"))]])

# a - b + c = d
FATOM = Relation.define("f", ("a", "b", "c", "d"),
                        [[eq((1, "a"), (-1, "b"), (1, "c"), (-1, "d"))]])

NEQ = Relation.define("neq", ("x", "y"), [[ne((1, "x"), (-1, "y"))]])

NONZERO = Relation.define("nonzero", ("x",), [[ne((1, "x"))]])

# {(x, y, z) : y != z and (x = y or x = z)}
S_Q = Relation.define("S", ("x", "y", "z"), [
    [ne((1, "y"), (-1, "z"))],
    [eq((1, "x"), (-1, "y")), eq((1, "x"), (-1, "z"))],
])

# {(x, y) : x != 0 and (y = 0 or x = y)}
T_REL = Relation.define("T", ("x", "y"), [
    [ne((1, "x"))],
    [eq((1, "y")), eq((1, "x"), (-1, "y"))],
])

# (x = 2y or y = u + v) and x != u
EXAMPLE = Relation.define("E", ("x", "y", "u", "v"), [
    [eq((1, "x"), (-2, "y")), eq((1, "y"), (-1, "u"), (-1, "v"))],
    [ne((1, "x"), (-1, "u"))],
])

# (x = y or x = z), contains the zero tuple
EQ_OR = Relation.define("D", ("x", "y", "z"), [[eq((1, "x"), (-1, "y")), eq((1, "x"), (-1, "z"))]])

# x - y = z - w
AFFINE_PARALLEL = Relation.define("P", ("x", "y", "z", "w"),
                                  [[eq((1, "x"), (-1, "y"), (-1, "z"), (1, "w"))]])

# (f(x, y, z) = w or f(x, z, y) = w) and x != y
AFFINE_HARD = Relation.define("H", ("x", "y", "z", "w"), [
    [eq((1, "x"), (-1, "y"), (1, "z"), (-1, "w")), eq((1, "x"), (-1, "z"), (1, "y"), (-1, "w"))],
    [ne((1, "x"), (-1, "y"))],
])

# (x = y or z = w) and x != z
AFFINE_SPLIT = Relation.define("G", ("x", "y", "z", "w"), [
    [eq((1, "x"), (-1, "y")), eq((1, "z"), (-1, "w"))],
    [ne((1, "x"), (-1, "z"))],
])


def language(*relations: Relation, mode: Mode = Mode.LINEAR) -> Language:
    return Language(mode, tuple(relations))


__all__ = ["PLUS", "FATOM", "NEQ", "NONZERO", "S_Q", "T_REL", "EXAMPLE", "EQ_OR",
           "AFFINE_PARALLEL", "AFFINE_HARD", "AFFINE_SPLIT", "language", "diff", "term"]
