"""Kleene algebra workbench: Antimirov automata, least solutions of linear
systems, transition monoids, finite models and the finite-model sandwich."""
from .automata import (Nfa, Verdict, accepts, antimirov_automaton, compose, expr_equiv,
                       expr_subset, identity, language_equiv, language_subset, make_nfa,
                       word_relation)
from .errors import BudgetExceeded, ParseError
from .fmp import CanonicalPipeline, FmpReport, fmp_sandwich
from .models import (FiniteKa, Interpretation, canonical_model, check_axioms,
                     countermodel_search, interpret, monoid_to_ka, relational_ka,
                     word_interpretation)
from .solver import LinearSystem, soli, solve_automaton, solve_system
from .suite import lemma_suite
from .syntax import (ONE, ZERO, Atom, Expr, Plus, Star, Times, derive, enumerate_words,
                     initials, member, nullable, parse, reachset, show)
from .transform import transformation_automaton, transition_monoid

__version__ = "0.1.0"

__all__ = [
    "Nfa",
    "Verdict",
    "accepts",
    "antimirov_automaton",
    "compose",
    "expr_equiv",
    "expr_subset",
    "identity",
    "language_equiv",
    "language_subset",
    "make_nfa",
    "word_relation",
    "BudgetExceeded",
    "ParseError",
    "CanonicalPipeline",
    "FmpReport",
    "fmp_sandwich",
    "FiniteKa",
    "Interpretation",
    "canonical_model",
    "check_axioms",
    "countermodel_search",
    "interpret",
    "monoid_to_ka",
    "relational_ka",
    "word_interpretation",
    "LinearSystem",
    "soli",
    "solve_automaton",
    "solve_system",
    "lemma_suite",
    "ONE",
    "ZERO",
    "Atom",
    "Expr",
    "Plus",
    "Star",
    "Times",
    "derive",
    "enumerate_words",
    "initials",
    "member",
    "nullable",
    "parse",
    "reachset",
    "show",
    "transformation_automaton",
    "transition_monoid",
]
