"""Read points given on the command line as ``name=value, ...``."""

from __future__ import annotations

import re

from henselkit.diffpoly.poly import Variable
from henselkit.expr.evaluate import parse_series, split_top_level
from henselkit.lib.errors import InputError, UnknownVariable
from henselkit.series.tower import Coefficient
from henselkit.weil.algebra import AlgebraElement, FiniteFreeAlgebra, ValuedBasis
from henselkit.weil.descent import DescendedPresentation, KPoint, LPoint, parse_element

# x1, x1', x1'' or x1^(3)
_GENERATOR = r"x(?P<index>\d+)(?:(?P<primes>'*)|\^\((?P<order>\d+)\))"
_L_NAME = re.compile(rf"^{_GENERATOR}$")
_K_NAME = re.compile(rf"^{_GENERATOR}\((?P<coordinate>\d+)\)$")


def _order(match: re.Match[str]) -> int:
    if match.group("order") is not None:
        return int(match.group("order"))
    return len(match.group("primes") or "")


def _assignments(text: str) -> list[tuple[str, str]]:
    pairs = []
    for part in split_top_level(text):
        name, sep, value = part.partition("=")
        if not sep or not value.strip():
            raise InputError(f"expected name=value, got '{part}'")
        pairs.append((name.strip().replace(" ", ""), value.strip()))
    if not pairs:
        raise InputError("empty point")
    return pairs


def _check_generator(index: int, count: int, name: str) -> int:
    if not 1 <= index <= count:
        raise UnknownVariable(f"{name} names no generator among x1..x{count}")
    return index - 1


def parse_k_point(text: str, desc: DescendedPresentation) -> KPoint:
    """``x1(1)=0, x1(2)=1`` -> a point of W(B) over K."""
    point: KPoint = {}
    for name, value in _assignments(text):
        match = _K_NAME.match(name)
        if match is None:
            raise UnknownVariable(f"'{name}' is not a descended variable such as x1(2)")
        generator = _check_generator(int(match["index"]), desc.source.num_generators, name)
        coordinate = int(match["coordinate"])
        if not 1 <= coordinate <= desc.dim:
            raise UnknownVariable(f"{name}: coordinate must lie in 1..{desc.dim}")
        var = desc.variable(generator, coordinate - 1, _order(match))
        point[var] = parse_series(value, desc.source.algebra.field)
    return point


def parse_l_point(text: str, algebra: FiniteFreeAlgebra, num_generators: int) -> LPoint:
    """``x1=i, x1'=0`` -> a point of B over L."""
    point: dict[Variable, AlgebraElement] = {}
    for name, value in _assignments(text):
        match = _L_NAME.match(name)
        if match is None:
            raise UnknownVariable(f"'{name}' is not a generator such as x1 or x1'")
        generator = _check_generator(int(match["index"]), num_generators, name)
        point[(generator, _order(match))] = parse_element(value, algebra)
    return point


def parse_coordinates(text: str, basis: ValuedBasis) -> list[Coefficient]:
    """Comma-separated coordinates over the base field, one per basis element."""
    parts = split_top_level(text)
    if len(parts) != basis.dim:
        raise InputError(f"expected {basis.dim} coordinates, got {len(parts)}")
    return [parse_series(p, basis.base) for p in parts]
