"""Exact Horn solving over (Q; +) and (Q; a - b + c), and the three-way classifier."""

from .classifier import (ClassificationReport, ReducedRelation, Verdict, classify, is_horn,
                         reduce_formula)
from .formula import (Clause, CnfFormula, Language, LinearTerm, Literal, Mode, Relation, eq,
                      evaluate, ne, term)
from .gadgets import (GadgetError, GadgetWitness, affine_sd_gadget, hyperplane_gadget,
                      neq_gadget, sq_gadget, t_gadget)
from .gauss import Outcome, TriangularSystem, add_equation, entails, reduce_term
from .horn import HornSolver, NotHornError, Sat, Unsat, replay, solve
from .pp import PpFormula, Refuted, SampleSpec, Verified, parse_pp, verify_gadget
from .rational import Rational, as_rational, bit_size, format_rational, parse_rational
from .semantics import BudgetExceeded, dnf_sat, equivalent, sample_oracle, sat_cnf
from .syntax import ParseError, parse_document, parse_instance, parse_language, to_text

__version__ = "0.1.0"

__all__ = [
    "ClassificationReport", "ReducedRelation", "Verdict", "classify", "is_horn",
    "reduce_formula", "Clause", "CnfFormula", "Language", "LinearTerm", "Literal", "Mode",
    "Relation", "eq", "evaluate", "ne", "term", "GadgetError", "GadgetWitness",
    "affine_sd_gadget", "hyperplane_gadget", "neq_gadget", "sq_gadget", "t_gadget", "Outcome",
    "TriangularSystem", "add_equation", "entails", "reduce_term", "HornSolver", "NotHornError",
    "Sat", "Unsat", "replay", "solve", "PpFormula", "Refuted", "SampleSpec", "Verified",
    "parse_pp", "verify_gadget", "Rational", "as_rational", "bit_size", "format_rational",
    "parse_rational", "BudgetExceeded", "dnf_sat", "equivalent", "sample_oracle", "sat_cnf",
    "ParseError", "parse_document", "parse_instance", "parse_language", "to_text",
]
