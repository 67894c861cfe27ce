"""Canonical text form of differential polynomials (degree-lex, highest first)."""

from __future__ import annotations

from collections.abc import Callable
from typing import TYPE_CHECKING

from henselkit.series.codec import format_series, signed_terms
from henselkit.series.tower import Coefficient, TowerElement

if TYPE_CHECKING:
    from henselkit.diffpoly.poly import DiffPoly, Monomial, Variable


def variable_name(var: Variable) -> str:
    """``x1``, ``x1'``, ``x1''``, then ``x1^(3)`` and beyond."""
    index, order = var
    name = f"x{index + 1}"
    if order <= 2:
        return name + "'" * order
    return f"{name}^({order})"


def format_monomial(monomial: Monomial, name: Callable[[Variable], str] | None = None) -> str:
    name = name or variable_name
    return "*".join(name(var) if exp == 1 else f"{name(var)}^{exp}" for var, exp in monomial)


def _coefficient(coeff: Coefficient, standalone: bool) -> tuple[bool, str]:
    """Sign and body of a coefficient; an empty body stands for 1."""
    if isinstance(coeff, TowerElement):
        if coeff.prec is None and len(coeff.terms) == 1:
            negative, body = signed_terms(coeff, standalone)[0]
            return negative, "" if body == "1" and not standalone else body
        return False, f"({format_series(coeff)})"
    negative = coeff < 0
    magnitude = abs(coeff)
    if standalone:
        return negative, str(magnitude)
    if magnitude == 1:
        return negative, ""
    if magnitude.denominator == 1:
        return negative, str(magnitude)
    return negative, f"({magnitude})"


def format_diffpoly(poly: DiffPoly, name: Callable[[Variable], str] | None = None) -> str:
    """Normal form text; ``name`` overrides how variables print."""
    if not poly.terms:
        return "0"
    text = ""
    for idx, (monomial, coeff) in enumerate(poly.terms):
        negative, body = _coefficient(coeff, standalone=not monomial)
        if monomial:
            mono = format_monomial(monomial, name)
            body = f"{body}*{mono}" if body else mono
        if idx == 0:
            text = f"-{body}" if negative else body
        else:
            text += f" - {body}" if negative else f" + {body}"
    return text
