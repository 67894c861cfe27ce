"""Text and JSON forms of tower elements.

Text: ``3 + (1/2)*t0^2 - t0^(5/2) + O(t0^4)``; nested coefficients print in parentheses
(``(1 + t0)*t1``). JSON: ``{level, ramification, precision, precOrder, terms}`` with
``terms = [[num, den, coeff], ...]`` and level-0 coefficients as ``[num, den]``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from henselkit.lib.errors import InputError
from henselkit.series.tower import Coefficient, TowerDescriptor, TowerElement, build_element


def _power(variable: str, exponent: Fraction) -> str:
    if exponent == 1:
        return variable
    if exponent.denominator == 1 and exponent > 0:
        return f"{variable}^{exponent}"
    return f"{variable}^({exponent})"


def _rational(value: Fraction, standalone: bool) -> str:
    if value.denominator == 1 or standalone:
        return str(value)
    return f"({value})"


def signed_terms(x: TowerElement, standalone: bool = True) -> list[tuple[bool, str]]:
    """Sign and body of each term; ``standalone`` is false when a monomial will follow."""
    variable = x.field.variable()
    out: list[tuple[bool, str]] = []
    for exponent, coeff in x.terms:
        monomial = "" if exponent == 0 else _power(variable, exponent)
        if isinstance(coeff, TowerElement):
            if coeff.prec is None and len(coeff.terms) == 1:
                negative, inner = signed_terms(coeff, standalone and not monomial)[0]
                if not monomial:
                    body = inner
                elif inner == "1":
                    body = monomial
                else:
                    body = f"{inner}*{monomial}"
            else:
                negative = False
                inner = format_series(coeff)
                body = f"({inner})*{monomial}" if monomial else f"({inner})"
        else:
            negative = coeff < 0
            magnitude = abs(coeff)
            if not monomial:
                body = _rational(magnitude, standalone=standalone)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{_rational(magnitude, standalone=False)}*{monomial}"
        out.append((negative, body))
    return out


def format_series(x: Coefficient) -> str:
    """Render an element in the series text syntax accepted by ``parse_series``."""
    if not isinstance(x, TowerElement):
        return str(x)
    pieces = signed_terms(x)
    if x.prec is not None:
        pieces.append((False, f"O({_power(x.field.variable(), x.prec)})"))
    if not pieces:
        return "0"
    text = ""
    for idx, (negative, body) in enumerate(pieces):
        if idx == 0:
            text = f"-{body}" if negative else body
        else:
            text += f" - {body}" if negative else f" + {body}"
    return text


def _fraction_pair(value: Fraction) -> list[int]:
    return [value.numerator, value.denominator]


def series_to_json(x: Coefficient) -> Any:
    """Machine-readable document; level-0 values are ``[num, den]``."""
    if not isinstance(x, TowerElement):
        return _fraction_pair(Fraction(x))
    return {
        "level": x.level,
        "ramification": list(x.field.ramification),
        "precision": list(x.field.precision),
        "precOrder": None if x.prec is None else _fraction_pair(x.prec),
        "terms": [
            [e.numerator, e.denominator, series_to_json(c)] for e, c in x.terms
        ],
    }


def _read_fraction(value: Any, what: str) -> Fraction:
    if isinstance(value, list | tuple) and len(value) == 2:
        num, den = value
        if isinstance(num, int) and isinstance(den, int) and den != 0:
            return Fraction(num, den)
    if isinstance(value, int | str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as err:
            raise InputError(f"invalid rational for {what}: {value!r}") from err
    raise InputError(f"invalid rational for {what}: {value!r}")


def series_from_json(doc: Any, tower_field: TowerDescriptor | None = None) -> Coefficient:
    """Rebuild an element from ``series_to_json`` output."""
    if not isinstance(doc, dict):
        return _read_fraction(doc, "level-0 value")
    try:
        level = int(doc["level"])
        terms = doc.get("terms", [])
        prec_raw = doc.get("precOrder")
    except (KeyError, TypeError, ValueError) as err:
        raise InputError(f"malformed series document: {err}") from err
    if tower_field is None:
        ramification = doc.get("ramification") or [1] * level
        precision = doc.get("precision") or [16] * level
        try:
            tower_field = TowerDescriptor(tuple(ramification), tuple(precision))
        except (TypeError, ValueError) as err:
            raise InputError(f"malformed series document: {err}") from err
    if tower_field.height != level:
        raise InputError(f"series document has level {level}, expected {tower_field.height}")
    below = tower_field.below()
    acc: dict[Fraction, Coefficient] = {}
    for entry in terms:
        if not isinstance(entry, list | tuple) or len(entry) != 3:
            raise InputError(f"malformed series term: {entry!r}")
        exponent = _read_fraction(entry[:2], "exponent")
        if not tower_field.in_lattice(exponent):
            raise InputError(f"exponent {exponent} is not a multiple of {tower_field.step}")
        acc[exponent] = series_from_json(entry[2], below)
    prec = None if prec_raw is None else _read_fraction(prec_raw, "precOrder")
    return build_element(tower_field, acc, prec)
