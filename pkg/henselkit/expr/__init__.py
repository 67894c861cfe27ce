"""Text front end: one pyparsing grammar, several evaluation contexts."""

from henselkit.expr.evaluate import (
    DiffPolyContext,
    EvaluationContext,
    SeriesContext,
    evaluate,
    parse_diffpoly,
    parse_jet,
    parse_rational,
    parse_series,
    safe_evaluate,
)
from henselkit.expr.grammar import parse_expression

__all__ = [
    "DiffPolyContext",
    "EvaluationContext",
    "SeriesContext",
    "evaluate",
    "parse_diffpoly",
    "parse_expression",
    "parse_jet",
    "parse_rational",
    "parse_series",
    "safe_evaluate",
]
