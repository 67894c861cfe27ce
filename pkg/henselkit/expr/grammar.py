"""pyparsing grammar for series literals and differential polynomials.

    expr    := sum
    sum     := product (('+' | '-') product)*
    product := signed (('*' | '/') signed)*
    signed  := ('+' | '-')* power
    power   := atom ('^' power)?
    atom    := integer | t<i> | x<i>['...] | x<i>^(<k>) | O(t<i>[^q]) | label | '(' expr ')'

``x1^(2)`` is the second derivative of x1 (same as ``x1''``); ``x1^2`` is its square.
``t0^(1/2)`` is a power of t0. Whitespace is insignificant.
"""

from __future__ import annotations

import re
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import pyparsing as pp

from henselkit.lib.errors import ExpressionSyntaxError

pp.ParserElement.enable_packrat()

_SERIES_RE = re.compile(r"t(\d+)")
_DIFF_RE = re.compile(r"x(\d+)(?:('+)|\^\((\d+)\))?")


@dataclass(frozen=True)
class Number:
    value: Fraction


@dataclass(frozen=True)
class SeriesVar:
    index: int


@dataclass(frozen=True)
class DiffVar:
    index: int
    order: int


@dataclass(frozen=True)
class Label:
    name: str


@dataclass(frozen=True)
class BigO:
    argument: Node


@dataclass(frozen=True)
class Unary:
    op: str
    operand: Node


@dataclass(frozen=True)
class Binary:
    op: str
    left: Node
    right: Node


Node = Union[Number, SeriesVar, DiffVar, Label, BigO, Unary, Binary]


def _pairwise(items):
    it = iter(items)
    return zip(it, it)


def _number(tokens: pp.ParseResults) -> Number:
    return Number(Fraction(int(tokens[0])))


def _series_var(tokens: pp.ParseResults) -> SeriesVar:
    match = _SERIES_RE.fullmatch(tokens[0])
    assert match is not None
    return SeriesVar(int(match.group(1)))


def _diff_var(tokens: pp.ParseResults) -> DiffVar:
    match = _DIFF_RE.fullmatch(tokens[0])
    assert match is not None
    index, primes, order = match.groups()
    if primes:
        return DiffVar(int(index), len(primes))
    return DiffVar(int(index), int(order) if order else 0)


def _label(tokens: pp.ParseResults) -> Label:
    return Label(tokens[0])


def _big_o(tokens: pp.ParseResults) -> BigO:
    return BigO(tokens[0])


def _power(tokens: pp.ParseResults) -> Node:
    items = tokens[0]
    node = items[-1]
    for idx in range(len(items) - 3, -1, -2):
        node = Binary("^", items[idx], node)
    return node


def _unary(tokens: pp.ParseResults) -> Node:
    items = tokens[0]
    node = items[-1]
    for op in reversed(items[:-1]):
        node = Unary(op, node)
    return node


def _binary(tokens: pp.ParseResults) -> Node:
    items = tokens[0]
    node = items[0]
    for op, rhs in _pairwise(items[1:]):
        node = Binary(op, node, rhs)
    return node


@lru_cache(maxsize=1)
def _grammar() -> pp.ParserElement:
    expr = pp.Forward()
    word_end = r"(?![A-Za-z0-9_'])"
    number = pp.Regex(r"\d+").set_parse_action(_number)
    series_var = pp.Regex(_SERIES_RE.pattern + word_end).set_parse_action(_series_var)
    diff_var = pp.Regex(_DIFF_RE.pattern + word_end).set_parse_action(_diff_var)
    big_o = (
        pp.Suppress(pp.Keyword("O") + pp.Literal("(")) + expr + pp.Suppress(")")
    ).set_parse_action(_big_o)
    label = pp.Regex(r"[A-Za-z_][A-Za-z0-9_]*").set_parse_action(_label)
    atom = big_o | number | series_var | diff_var | label
    arith = pp.infix_notation(
        atom,
        [
            (pp.Literal("^"), 2, pp.OpAssoc.RIGHT, _power),
            (pp.one_of("+ -"), 1, pp.OpAssoc.RIGHT, _unary),
            (pp.one_of("* /"), 2, pp.OpAssoc.LEFT, _binary),
            (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT, _binary),
        ],
    )
    expr <<= arith
    return expr


@lru_cache(maxsize=512)
def parse_expression(text: str) -> Node:
    """Parse ``text`` into an expression tree."""
    if not text or not text.strip():
        raise ExpressionSyntaxError("empty expression", 0, text)
    try:
        result = _grammar().parse_string(text, parse_all=True)
    except pp.ParseException as err:
        raise ExpressionSyntaxError(f"unexpected input: {err.msg}", err.loc, text) from err
    return result[0]


def walk(node: Node) -> Iterator[Node]:
    yield node
    if isinstance(node, BigO):
        yield from walk(node.argument)
    elif isinstance(node, Unary):
        yield from walk(node.operand)
    elif isinstance(node, Binary):
        yield from walk(node.left)
        yield from walk(node.right)


def max_series_index(node: Node) -> int:
    """Largest ``i`` among the ``t<i>`` in the tree, or -1."""
    return max((n.index for n in walk(node) if isinstance(n, SeriesVar)), default=-1)


def max_diff_index(node: Node) -> int:
    """Largest ``i`` among the ``x<i>`` in the tree, or 0."""
    return max((n.index for n in walk(node) if isinstance(n, DiffVar)), default=0)
