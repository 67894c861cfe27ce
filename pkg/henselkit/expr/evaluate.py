"""Evaluation of parsed expressions into series, differential polynomials or algebra elements."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from henselkit.diffpoly.poly import DiffPoly
from henselkit.expr.grammar import (
    BigO,
    Binary,
    DiffVar,
    Label,
    Node,
    Number,
    SeriesVar,
    Unary,
    max_diff_index,
    max_series_index,
    parse_expression,
)
from henselkit.lib.errors import (
    ExpressionSyntaxError,
    HenselkitError,
    InputError,
    UnknownVariable,
    ZeroDivisorInExpression,
)
from henselkit.series.tower import (
    DEFAULT_PRECISION,
    DEFAULT_RAMIFICATION,
    Coefficient,
    TowerDescriptor,
    TowerElement,
    big_o,
    embed,
    generator,
    is_exact_zero,
)


class EvaluationContext:
    """Decides what each leaf of an expression means; arithmetic uses Python operators."""

    def number(self, value: Fraction) -> Any:
        return value

    def series_power(self, index: int, exponent: Fraction) -> Any:
        raise UnknownVariable(f"t{index} is not available here")

    def series_variable(self, index: int) -> Any:
        return self.series_power(index, Fraction(1))

    def diff_variable(self, index: int, order: int) -> Any:
        raise UnknownVariable(f"x{index} is not allowed here")

    def label(self, name: str) -> Any:
        raise UnknownVariable(f"unknown identifier '{name}'")

    def remainder(self, index: int, order: Fraction) -> Any:
        raise UnknownVariable("O(...) is not allowed here")


class RationalContext(EvaluationContext):
    """Plain rationals, used for exponents."""


class SeriesContext(EvaluationContext):
    def __init__(self, tower_field: TowerDescriptor):
        self.field = tower_field

    def _check(self, index: int) -> None:
        if index >= self.field.height:
            raise UnknownVariable(
                f"t{index} does not exist in a tower of height {self.field.height}"
            )

    def series_power(self, index: int, exponent: Fraction) -> Coefficient:
        self._check(index)
        return generator(self.field, index, exponent)

    def remainder(self, index: int, order: Fraction) -> Coefficient:
        self._check(index)
        return big_o(self.field, index, order)


class DiffPolyContext(SeriesContext):
    def __init__(self, tower_field: TowerDescriptor, num_vars: int):
        super().__init__(tower_field)
        self.num_vars = num_vars

    def diff_variable(self, index: int, order: int) -> DiffPoly:
        if not 1 <= index <= self.num_vars:
            raise UnknownVariable(f"x{index} is not among x1..x{self.num_vars}")
        return DiffPoly.variable(self.field, self.num_vars, index - 1, order)


def _exponent(node: Node) -> Fraction:
    value = evaluate(node, RationalContext())
    if not isinstance(value, Fraction):
        raise InputError("exponents must be rational constants")
    return value


def _is_zero_literal(value: Any) -> bool:
    if isinstance(value, DiffPoly):
        return value.is_zero
    return isinstance(value, int | Fraction | TowerElement) and is_exact_zero(value)


def evaluate(node: Node, context: EvaluationContext) -> Any:
    if isinstance(node, Number):
        return context.number(node.value)
    if isinstance(node, SeriesVar):
        return context.series_variable(node.index)
    if isinstance(node, DiffVar):
        return context.diff_variable(node.index, node.order)
    if isinstance(node, Label):
        return context.label(node.name)
    if isinstance(node, BigO):
        arg = node.argument
        if isinstance(arg, SeriesVar):
            return context.remainder(arg.index, Fraction(1))
        if isinstance(arg, Binary) and arg.op == "^" and isinstance(arg.left, SeriesVar):
            return context.remainder(arg.left.index, _exponent(arg.right))
        raise InputError("O(...) takes a power of a single t variable")
    if isinstance(node, Unary):
        operand = evaluate(node.operand, context)
        return -operand if node.op == "-" else operand
    if isinstance(node, Binary):
        if node.op == "^":
            exponent = _exponent(node.right)
            if isinstance(node.left, SeriesVar):
                return context.series_power(node.left.index, exponent)
            if exponent.denominator != 1:
                raise InputError("fractional exponents apply only to t variables")
            return evaluate(node.left, context) ** int(exponent)
        left = evaluate(node.left, context)
        right = evaluate(node.right, context)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if _is_zero_literal(right):
            raise ZeroDivisorInExpression("division by zero in expression")
        try:
            return left / right
        except ZeroDivisionError as err:
            raise ZeroDivisorInExpression("division by zero in expression") from err
    raise ExpressionSyntaxError(f"unsupported expression node {node!r}", 0)


def tower_for(
    node: Node,
    ramification: Sequence[int] = (DEFAULT_RAMIFICATION,),
    precision: Sequence[int] = (DEFAULT_PRECISION,),
    minimum_height: int = 0,
) -> TowerDescriptor:
    height = max(max_series_index(node) + 1, minimum_height)
    return TowerDescriptor.build(height, ramification, precision)


def parse_series(text: str, tower_field: TowerDescriptor | None = None) -> Coefficient:
    """Parse a series literal such as ``1 + t0 + (1/2)*t0^2 + O(t0^3)``."""
    target = tower_field if tower_field is not None else tower_for(parse_expression(text))
    return embed(safe_evaluate(text, SeriesContext(target)), target)


def parse_rational(text: str) -> Fraction:
    value = evaluate(parse_expression(text), RationalContext())
    if not isinstance(value, Fraction):
        raise InputError(f"'{text}' is not a rational constant")
    return value


def parse_diffpoly(
    text: str, tower_field: TowerDescriptor | None = None, num_vars: int | None = None
) -> DiffPoly:
    """Parse ``x1'' + x1*x1' - t0`` style text into its normal form."""
    node = parse_expression(text)
    width = num_vars if num_vars is not None else max(max_diff_index(node), 1)
    field = tower_field if tower_field is not None else tower_for(node)
    value = safe_evaluate(text, DiffPolyContext(field, width))
    if isinstance(value, DiffPoly):
        return value.embed(field, width) if value.field != field else value
    return DiffPoly.constant(field, width, value)


def parse_jet(text: str, tower_field: TowerDescriptor | None = None) -> list[Coefficient]:
    """Comma-separated series literals, e.g. ``"1, 1"`` or ``"1 + t0, 1"``."""
    parts = split_top_level(text)
    if not parts:
        raise InputError("empty jet")
    if tower_field is None:
        height = max(max_series_index(parse_expression(p)) + 1 for p in parts)
        tower_field = TowerDescriptor.build(height)
    return [parse_series(p, tower_field) for p in parts]


def split_top_level(text: str) -> list[str]:
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    tail = "".join(current).strip()
    if tail:
        parts.append(tail)
    return [p for p in parts if p]


def safe_evaluate(text: str, context: EvaluationContext) -> Any:
    """Evaluate ``text`` in ``context`` and keep library errors as they are."""
    node = parse_expression(text)
    try:
        return evaluate(node, context)
    except HenselkitError:
        raise
    except TypeError as err:
        raise InputError(f"cannot evaluate '{text}': {err}") from err
