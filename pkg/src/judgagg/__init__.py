"""Judgment aggregation over propositional agendas.

The package is organised bottom-up:

``logic``
    formulas, parsing, truth masks, consistency and entailment
``agenda``
    agendas, judgment sets, profiles, codomains and agenda structure
``binary``, ``domains``
    logic/binary conversion and restricted-domain recognizers
``metrics``
    distances, norms and scoring functions
``rules``
    the aggregation rules
``properties``
    property checkers, counterexample search and rule comparison
``preferences``
    voting through the preference agenda
``cli``
    the ``ja`` command line front end
"""

from ._kernels import BACKEND
from .agenda import (
    Agenda, JudgmentSet, Outcome, PartialOutcome, Profile, codomain, ext,
    make_agenda, majoritarian_set, support, unanimity_set,
)
from .logic import entails, evaluate, format_formula, is_consistent_set, parse_formula

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Agenda", "JudgmentSet", "Outcome", "PartialOutcome", "Profile",
    "codomain", "ext", "make_agenda", "majoritarian_set", "support",
    "unanimity_set", "entails", "evaluate", "format_formula",
    "is_consistent_set", "parse_formula",
]
