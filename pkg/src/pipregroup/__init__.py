"""Free pi-augmented pregroups: rewriting, bounded proof search and grammars."""

from .core import (
    UNIT, Pi, Simple, WordSyntaxError, iterate_adjoint, left_adjoint, parse_term,
    parse_word, render, render_term, right_adjoint,
)
from .engine import (
    Budget, Calculus, Derivation, Outcome, SearchResult, ValidationReport, derive,
    m_con_marks, nullable, reduce_any, reduce_to, validate, validate_trace,
)
from .grammar import Grammar, GrammarError, Verdict, check, load_grammar, load_fixture, type_sentence
from .poset import Poset, PosetError
from .rules import RuleContext, RuleTag, Step, StepError, apply_step, enumerate_predecessors, enumerate_steps

__version__ = "0.1.0"

__all__ = [
    "UNIT",
    "Pi",
    "Simple",
    "WordSyntaxError",
    "iterate_adjoint",
    "left_adjoint",
    "parse_term",
    "parse_word",
    "render",
    "render_term",
    "right_adjoint",
    "Budget",
    "Calculus",
    "Derivation",
    "Outcome",
    "SearchResult",
    "ValidationReport",
    "derive",
    "m_con_marks",
    "nullable",
    "reduce_any",
    "reduce_to",
    "validate",
    "validate_trace",
    "Grammar",
    "GrammarError",
    "Verdict",
    "check",
    "load_grammar",
    "load_fixture",
    "type_sentence",
    "Poset",
    "PosetError",
    "RuleContext",
    "RuleTag",
    "Step",
    "StepError",
    "apply_step",
    "enumerate_predecessors",
    "enumerate_steps",
]
