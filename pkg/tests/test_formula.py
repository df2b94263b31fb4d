from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from csplin import catalog
from csplin.formula import (AffineInvarianceError, Clause, CnfFormula, Language, LinearTerm, Literal,
                            MissingVariableError, Mode, Relation, eq, ne, normalize)
from csplin.syntax import (ParseError, format_formula, parse_document, parse_formula, parse_instance,
                           parse_language, parse_term, to_text)

small = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 7))


def test_normalize_scales_equation():
    assert normalize(eq((2, "x"), (-2, "y"))) == eq((1, "x"), (-1, "y"))


def test_normalize_leading_sign():
    assert normalize(ne((-1, "x"), (1, "y")), ("x", "y")) == ne((1, "x"), (-1, "y"))


def test_normalize_true_literal():
    lit = normalize(Literal.eq(LinearTerm()))
    assert lit.term.is_zero() and lit.constant_truth() is True


def test_normalize_idempotent():
    lit = ne((3, "y"), (6, "x"), const=9)
    once = normalize(lit, ("x", "y"))
    assert normalize(once, ("x", "y")) == once
    assert once.term.coeff("x") == 1


@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_normalize_preserves_truth(coeffs, point):
    t = LinearTerm(zip("xyz", coeffs))
    values = dict(zip("xyz", point))
    for lit in (Literal.eq(t), Literal.ne(t)):
        assert normalize(lit, "zyx").holds(values) == lit.holds(values)


def test_term_accumulates_and_drops_zeros():
    t = LinearTerm([("x", 1), ("y", 2), ("x", -1)])
    assert t.variables() == ("y",)
    assert LinearTerm({"x": 0}).is_zero()


def test_term_equality_ignores_order():
    assert LinearTerm([("x", 1), ("y", 2)]) == LinearTerm([("y", 2), ("x", 1)])
    assert hash(LinearTerm([("x", 1), ("y", 2)])) == hash(LinearTerm([("y", 2), ("x", 1)]))


def test_evaluate_examples():
    f = CnfFormula.build([[eq((1, "x"), (-1, "y"))]])
    assert f.evaluate({"x": Fraction(1), "y": Fraction(1)})
    g = CnfFormula.build([[ne((1, "x")), eq((1, "y"))]])
    assert not g.evaluate({"x": Fraction(0), "y": Fraction(3)})
    assert catalog.S_Q.contains((0, 0, 1))


def test_evaluate_missing_variable():
    f = CnfFormula.build([[eq((1, "x"), (-1, "y"))]])
    with pytest.raises(MissingVariableError):
        f.evaluate({"x": Fraction(1)})


def test_clause_merges_duplicates_and_detects_tautology():
    l = eq((1, "x"), (-1, "y"))
    assert len(Clause((l, l))) == 1
    assert Clause((l, l.negate())).is_tautology()


def test_build_drops_tautology():
    l = eq((1, "x"), (-1, "y"))
    f = CnfFormula.build([[l, l.negate()], [ne((1, "x"))]], ("x", "y"))
    assert len(f.clauses) == 1


def test_undeclared_variable_rejected():
    with pytest.raises(ValueError):
        CnfFormula((Clause((eq((1, "q")),)),), ("x",))


def test_affine_language_rejects_non_invariant_literal():
    r = Relation.define("bad", ("x", "y"), [[eq((1, "x"), (-2, "y"))]])
    with pytest.raises(AffineInvarianceError):
        Language(Mode.AFFINE, (r,))
    Language(Mode.LINEAR, (r,))


@given(st.builds(Fraction, st.integers(1, 9) | st.integers(-9, -1), st.integers(1, 9)), small,
       st.lists(small, min_size=4, max_size=4))
def test_affine_literals_invariant_under_affine_maps(a, b, point):
    r = catalog.AFFINE_HARD
    moved = tuple(a * x + b for x in point)
    assert r.contains(point) == r.contains(moved)


# -- syntax --------------------------------------------------------------------

def test_parse_term():
    assert parse_term("(lin 0 (1 x) (-2 y))") == LinearTerm([("x", 1), ("y", -2)])
    assert parse_term("(lin 1/2 (3/4 x))") == LinearTerm([("x", Fraction(3, 4))], Fraction(1, 2))


def test_affine_mode_rejects_coefficient_sum_one():
    text = "(mode affine)\n(relation R (x y) (eq (lin 0 (2 x) (-1 y))))"
    with pytest.raises(ParseError) as info:
        parse_language(text)
    assert info.value.line == 2


EXAMPLE_TEXT = """
; the worked example relation
(relation E (x y u v)
  (and (or (eq (lin 0 (1 x) (-2 y))) (eq (lin 0 (1 y) (-1 u) (-1 v))))
       (ne (lin 0 (1 x) (-1 u)))))
"""


def test_parse_example_relation():
    lang = parse_language(EXAMPLE_TEXT)
    r = lang["E"]
    assert r.arity == 4 and len(r.definition.clauses) == 2
    assert r.definition == catalog.EXAMPLE.definition
    assert lang.mode is Mode.LINEAR


def test_print_parse_roundtrip_language():
    lang = catalog.language(catalog.S_Q, catalog.EXAMPLE, catalog.PLUS)
    again = parse_language(to_text(lang))
    assert again == lang
    assert to_text(again) == to_text(lang)


def test_print_parse_normalizes():
    f = parse_formula("(and (eq (lin 0 (2 x) (-2 y))))", ("x", "y"))
    assert format_formula(f) == "(and (eq (lin 0 (1 x) (-1 y))))"


@pytest.mark.parametrize("text,line,col", [
    ("(instance (x) (eq (lin 0 (1 y))))", 1, None),
    ("(instance (x) (eq (lin 0 (1 x)))", 1, None),
    ("(instance (x)\n  (eq (lin 0 (1/0 x))))", 2, None),
    ("(relation R (x) (foo (lin 0 (1 x))))", 1, 17),
])
def test_parse_errors_are_positioned(text, line, col):
    with pytest.raises((ParseError, ZeroDivisionError)) as info:
        parse_document(text)
    if isinstance(info.value, ParseError):
        assert info.value.line == line
        if col is not None:
            assert info.value.col == col


def test_mode_header_must_come_first():
    with pytest.raises(ParseError):
        parse_document("(instance (x) (eq (lin 0 (1 x))))\n(mode linear)")


def test_parse_instance_requires_one():
    with pytest.raises(ParseError):
        parse_instance("")
    f = parse_instance("(instance (x y) (and))")
    assert f.clauses == () and f.variables == ("x", "y")


def test_variable_order_is_declaration_order():
    f = parse_instance("(instance (b a) (eq (lin 0 (1 a) (1 b))))")
    assert f.variables == ("b", "a")
    assert f.clauses[0].literals[0].term.variables() == ("b", "a")


@given(st.lists(st.lists(st.tuples(st.sampled_from([-3, -1, 1, 2]), st.sampled_from("xyz"), st.booleans()),
                         min_size=1, max_size=3), min_size=0, max_size=4))
def test_random_roundtrip(spec):
    clauses = [[(Literal.eq if pos else Literal.ne)(LinearTerm([(v, c)])) for c, v, pos in cl] for cl in spec]
    f = CnfFormula.build(clauses, ("x", "y", "z"))
    assert parse_formula(format_formula(f), f.variables) == f
