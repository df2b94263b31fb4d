import random
from fractions import Fraction

import pytest

from csplin import catalog
from csplin.classifier import reduce_formula
from csplin.formula import Language, Mode, Relation, eq, ne
from csplin.gadgets import (GadgetError, affine_q, affine_sd_gadget, check_indep1, check_indep2,
                            find_sq_witness, hyperplane_gadget, hyperplane_relation, indep1_gadget,
                            integer_pairs, neq_gadget, search_neq_definition, sq_gadget, t_gadget)
from csplin.pp import (PpAtom, PpBuilder, PpFormula, Refuted, SampleSpec, Verified, identify,
                       parse_pp, pp_holds, project, sample_points, verify_gadget)

GRID_ONLY = SampleSpec(random_points=0)
LINEAR = Mode.LINEAR


def lang_of(*rels, mode=LINEAR):
    return Language(mode, tuple(rels))


# -- pp formulas ------------------------------------------------------------------

def test_pp_text_roundtrip():
    g = hyperplane_gadget((3, -2, 5))
    assert parse_pp(g.to_text()) == g
    assert parse_pp("(pp (free x) (exists) (atoms))").atoms == ()


def test_pp_rejects_unknown_variables():
    with pytest.raises(ValueError):
        PpFormula(("x",), (), (PpAtom("eq", ("x", "y")),))
    with pytest.raises(ValueError):
        PpAtom("sum", ("x", "y"))


def test_builder_fresh_names_avoid_free_names():
    b = PpBuilder(("_t0", "x"))
    assert b.fresh() == "_t1"


def test_project_and_identify():
    pp = PpFormula(("a", "b", "c"), (), (PpAtom("sum", ("a", "b", "c")),))
    proj = project(pp, ["c", "a"], ["u", "v"])
    assert proj.free == ("u", "v") and len(proj.bound) == 1
    matrix = proj.expand()
    assert pp_holds(matrix, proj.free, (Fraction(5), Fraction(2)))
    ident = identify(pp, "a", "b")
    assert ident.free == ("a", "c")
    m2 = ident.expand()
    assert pp_holds(m2, ident.free, (Fraction(2), Fraction(4)))
    assert not pp_holds(m2, ident.free, (Fraction(2), Fraction(3)))


def test_sample_points_deterministic_and_sized():
    pts = list(sample_points(2, SampleSpec(random_points=10, seed=4)))
    assert len(pts) == 35 and pts == list(sample_points(2, SampleSpec(random_points=10, seed=4)))
    assert len(list(sample_points(6, SampleSpec(random_points=0)))) == 5**5


def test_unknown_relation_in_gadget():
    g = PpFormula(("x",), (), (PpAtom("rel", ("x",), "nope"),))
    with pytest.raises(KeyError):
        g.expand(lang_of(catalog.PLUS))


# -- hyperplanes --------------------------------------------------------------

def test_hyperplane_atomic():
    g = hyperplane_gadget((1, 1, -1))
    assert g.atoms == (PpAtom("sum", ("x1", "x2", "x3")),)
    assert verify_gadget(g, catalog.PLUS, None, GRID_ONLY) == Verified(125)


def test_hyperplane_two_x_equals_y():
    g = hyperplane_gadget((2, -1))
    assert verify_gadget(g, hyperplane_relation((2, -1)))
    assert g.kinds() <= {"sum", "eq", "zero"}


def test_hyperplane_zero_coefficient_is_full_relation():
    g = hyperplane_gadget((0,))
    assert g.atoms == ()
    assert verify_gadget(g, Relation.define("all", ("x1",), []))


def test_integer_pairs_clears_denominators():
    assert integer_pairs([("a", Fraction(1, 2)), ("b", Fraction(-3, 4)), ("a", 1)]) == [("a", 2), ("b", -1)]
    assert integer_pairs([("a", 0)]) == []


def test_hyperplane_uses_only_plus_and_zero():
    for coeffs in [(5, 7, -3, 2), (Fraction(1, 2), Fraction(-3, 4)), (-1, -1, -1)]:
        assert hyperplane_gadget(coeffs).kinds() <= {"sum", "eq", "zero"}


@pytest.mark.parametrize("coeffs,lam", [((2, -3, 1), 5), ((1, 4), Fraction(-2, 7)), ((3, 3, -1, 2), -1)])
def test_hyperplane_scaling_invariance(coeffs, lam):
    target = hyperplane_relation(coeffs)
    assert verify_gadget(hyperplane_gadget([lam * c for c in coeffs]), target)


@pytest.mark.parametrize("seed", range(8))
def test_hyperplane_random(seed):
    rng = random.Random(seed)
    coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(rng.randint(1, 4))]
    assert verify_gadget(hyperplane_gadget(coeffs), hyperplane_relation(coeffs))


def test_mutation_is_refuted():
    g = hyperplane_gadget((3, -2, 5))
    target = hyperplane_relation((3, -2, 5))
    for k in range(len(g.atoms)):
        res = verify_gadget(g.without_atom(k), target)
        if not res:
            assert isinstance(res, Refuted)
            pt = res.counterexample
            assert target.contains(pt) == res.in_target
            break
    else:
        pytest.fail("no single-atom deletion was detected")


# -- disequality ------------------------------------------------------------------

def test_neq_from_nonzero():
    g = neq_gadget(catalog.NONZERO)
    assert verify_gadget(g, catalog.NEQ, lang_of(catalog.NONZERO))


def test_neq_from_s():
    g = neq_gadget(catalog.S_Q)
    assert verify_gadget(g, catalog.NEQ, lang_of(catalog.S_Q), GRID_ONLY)
    assert verify_gadget(g, catalog.NEQ, lang_of(catalog.S_Q))
    assert "neq" not in g.kinds()


def test_neq_preconditions():
    with pytest.raises(GadgetError):
        neq_gadget(catalog.PLUS)
    empty = Relation.define("none", ("x",), [[ne((1, "x"), (-1, "x"))]])
    with pytest.raises(GadgetError):
        neq_gadget(empty)
    const = Relation.define("c", ("x",), [[eq((1, "x"), const=-1)]])
    with pytest.raises(GadgetError):
        neq_gadget(const)


NEQ_SOURCES = [
    catalog.S_Q, catalog.EXAMPLE, catalog.T_REL, catalog.NONZERO,
    Relation.define("K", ("x", "y", "z"), [[eq((1, "x"), (-2, "y"))], [ne((1, "x"), (1, "z"))]]),
]


@pytest.mark.parametrize("r", NEQ_SOURCES, ids=lambda r: r.name)
def test_neq_from_various(r):
    assert verify_gadget(neq_gadget(r), catalog.NEQ, lang_of(r))


# -- S over (Q; +) --------------------------------------------------------------

W = Relation.define("W", ("x", "y", "z", "w"),
                    [[eq((1, "x"), (-1, "y")), eq((1, "x"), (-1, "z"))], [ne((1, "w"))]])


def test_sq_from_s_itself():
    g = sq_gadget(catalog.S_Q)
    assert verify_gadget(g, catalog.S_Q, lang_of(catalog.S_Q), GRID_ONLY)
    assert g.free == ("u", "v", "w")


def test_sq_with_extra_coordinate():
    assert verify_gadget(sq_gadget(W), catalog.S_Q, lang_of(W))


def test_sq_rejects_horn():
    with pytest.raises(GadgetError):
        sq_gadget(catalog.PLUS)


@pytest.mark.parametrize("r", [catalog.S_Q, catalog.EXAMPLE, W, catalog.EQ_OR], ids=lambda r: r.name)
def test_t_identity_on_grid(r):
    t = t_gadget(r)
    matrix = t.expand(lang_of(r))
    for x in range(-2, 3):
        for y in range(-2, 3):
            expected = x != 0 and (y == 0 or x == y)
            assert pp_holds(matrix, t.free, (Fraction(x), Fraction(y))) == expected


@pytest.mark.parametrize("r", [catalog.S_Q, catalog.EXAMPLE, W], ids=lambda r: r.name)
def test_witness_revalidated(r):
    red = reduce_formula(r).reduced
    w = find_sq_witness(r, red)
    assert w.validate(red)
    clause = red.clauses[w.clause_index]
    assert clause.literals[w.l1].positive and clause.literals[w.l2].positive
    bad = type(w)(w.relation, w.clause_index, w.l1, w.l2, w.q, w.p)
    assert not bad.validate(red)


def test_sq_on_non_reduced_input_signals():
    # the unit x = y makes the literal x = z removable
    r = Relation.define("nr", ("x", "y", "z"), [[eq((1, "x"), (-1, "y")), eq((1, "x"), (-1, "z"))],
                                                 [eq((1, "x"), (-1, "y"))]])
    with pytest.raises(GadgetError, match="not reduced"):
        sq_gadget(r, r.definition)


# -- affine ------------------------------------------------------------------------

AFF = Mode.AFFINE


def test_affine_sd_from_hard_relation():
    g = affine_sd_gadget(catalog.AFFINE_HARD)
    assert {"fatom", "neq", "rel", "eq"} >= g.kinds()
    assert "sum" not in g.kinds() and "zero" not in g.kinds()
    assert verify_gadget(g, catalog.S_Q, lang_of(catalog.AFFINE_HARD, mode=AFF))


def test_affine_sd_rejects_horn():
    with pytest.raises(GadgetError):
        affine_sd_gadget(catalog.AFFINE_PARALLEL)


def test_indep1_on_s_like_relation():
    q = PpFormula(("x", "y", "z"), (), (PpAtom("rel", ("x", "y", "z"), "S"),))
    lang = lang_of(catalog.S_Q, mode=AFF)
    assert check_indep1(q, "x", "y", "z", lang) == (True, True, True)
    g = indep1_gadget(q, "x", "y", "z", lang)
    assert verify_gadget(g, catalog.S_Q, lang, GRID_ONLY)


def test_indep2_conditions_hold_for_hard_relation():
    lang = lang_of(catalog.AFFINE_HARD, mode=AFF)
    q, (a, y1, b, y2) = affine_q(catalog.AFFINE_HARD)
    assert a != b
    assert check_indep2(q, a, y1, b, y2, lang) == (True, True, True)


def test_search_neq_definition():
    found = search_neq_definition(catalog.AFFINE_HARD)
    assert found is not None
    assert verify_gadget(found, catalog.NEQ, lang_of(catalog.AFFINE_HARD, mode=AFF))
    assert search_neq_definition(catalog.AFFINE_PARALLEL) is None
