"""Compile fuzzy regular expressions into fuzzy finite automata.

Pipeline: :func:`parse` -> :func:`lift` -> :func:`glushkov` ->
:func:`synthesize_full` / :func:`synthesize_reduced` -> :func:`degree`.
"""

__version__ = "0.1.0"

from .algebra import STRUCTURES, ConfigurationError, LMonoid, make_structure
from .automaton import FuzzyAutomaton, UnknownLetterError, degree, degree_table, from_nfa
from .fixtures import load_fixture
from .lift import LiftResult, ScalarLetter, lift, phi_star, unlift
from .position import Nfa, glushkov, nfa_accepts
from .reduction import (
    NotRightInvariant,
    Partition,
    factor_automaton,
    greatest_right_invariant,
    is_right_invariant,
)
from .regex import (
    BudgetExceeded,
    Concat,
    Empty,
    Epsilon,
    LanguageSample,
    RegexSyntaxError,
    Scalar,
    Star,
    Sum,
    Sym,
    eval_direct,
    language_table,
    parse,
    render,
)
from .serialize import dumps, from_document, loads, to_document, to_dot
from .synthesis import compile_regex, exact_budget, shuffle_degree, synthesize_full, synthesize_reduced

__all__ = [name for name in dir() if not name.startswith("_")]
