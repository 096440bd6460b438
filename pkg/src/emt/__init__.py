"""E-graphs modulo theories.

E-class ids are semantic values owned by per-sort theory solvers
(union find, linear arithmetic, multisets, polynomials, integer offsets,
primitives/constructors); matching is bottom-up over the termbank.
"""
from .egraph import EGraph
from .ematch import Match, Rule, SaturationReport, apply_rule, match_naive, match_opt, saturate
from .errors import (
    ArityError, CompletionBudget, DuplicateName, EMTError, InconsistentConstant, NoRepresentative,
    OccursViolation, ParseError, SortError, TheoryInconsistency, UnknownSort, UnknownSymbol,
)
from .extract import ExtractResult, extract
from .script import parse, run_script
from .sexp import parse_term

__version__ = "0.1.0"

__all__ = [
    "EGraph", "Rule", "Match", "SaturationReport", "apply_rule", "match_naive", "match_opt", "saturate",
    "extract", "ExtractResult", "parse", "run_script", "parse_term",
    "EMTError", "DuplicateName", "UnknownSort", "UnknownSymbol", "SortError", "ArityError",
    "TheoryInconsistency", "InconsistentConstant", "OccursViolation", "CompletionBudget",
    "NoRepresentative", "ParseError",
]
