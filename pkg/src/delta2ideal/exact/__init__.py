"""Exact arithmetic kernel: rationals, sparse polynomials, resultants."""

from .laurent import BETA, LaurentElement, substitute
from .poly import (
    CANONICAL,
    AlgebraError,
    MPoly,
    Monomial,
    NonDivisible,
    PolyParseError,
    VariableMismatch,
    VarTable,
    format_poly,
    grevlex_key,
    parse_poly,
)
from .resultant import (
    STRATEGIES,
    STRATEGY_INTERP,
    STRATEGY_SYLVESTER,
    det_bareiss_poly,
    resultant,
    sylvester_matrix,
)

__all__ = [
    "AlgebraError",
    "BETA",
    "CANONICAL",
    "LaurentElement",
    "MPoly",
    "Monomial",
    "NonDivisible",
    "PolyParseError",
    "STRATEGIES",
    "STRATEGY_INTERP",
    "STRATEGY_SYLVESTER",
    "VarTable",
    "VariableMismatch",
    "det_bareiss_poly",
    "format_poly",
    "grevlex_key",
    "parse_poly",
    "resultant",
    "substitute",
    "sylvester_matrix",
]
