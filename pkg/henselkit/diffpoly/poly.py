"""Sparse differential polynomials K{x1, ..., xm} over a tower stage.

A variable is a pair ``(index, order)`` standing for ``x_{index+1}^(order)``; a monomial is a
sorted tuple of ``(variable, exponent)`` pairs with every exponent >= 1.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from henselkit.lib.errors import InsufficientPrecision, JetTooShort, VariableAbsent
from henselkit.series.tower import (
    Coefficient,
    TowerDescriptor,
    TowerElement,
    common_field,
    derive,
    embed,
    higher_field,
    invert,
    is_exact_zero,
    vanishes,
    zero,
)

_LOG = logging.getLogger(__name__)

Variable = tuple[int, int]
Monomial = tuple[tuple[Variable, int], ...]
Jet = Sequence[Sequence[Coefficient]]

ONE: Monomial = ()


def monomial_degree(monomial: Monomial) -> int:
    return sum(exp for _, exp in monomial)


def monomial_key(monomial: Monomial) -> tuple[int, Monomial]:
    """Degree-lexicographic key; larger keys print first."""
    return (monomial_degree(monomial), monomial)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    merged: dict[Variable, int] = dict(a)
    for var, exp in b:
        merged[var] = merged.get(var, 0) + exp
    return tuple(sorted(merged.items()))


def _without(monomial: Monomial, var: Variable) -> Monomial:
    """Divide ``monomial`` by one factor of ``var``."""
    out = []
    for v, exp in monomial:
        if v == var:
            if exp > 1:
                out.append((v, exp - 1))
        else:
            out.append((v, exp))
    return tuple(out)


def _scalar_field(value: Any) -> TowerDescriptor | None:
    if isinstance(value, int | Fraction):
        return TowerDescriptor()
    if isinstance(value, TowerElement):
        return value.field
    return None


@dataclass(frozen=True)
class DiffPoly:
    """A differential polynomial in ``num_vars`` variables with coefficients in ``field``."""

    field: TowerDescriptor
    num_vars: int
    terms: tuple[tuple[Monomial, Coefficient], ...] = ()

    @classmethod
    def from_mapping(
        cls,
        tower_field: TowerDescriptor,
        num_vars: int,
        mapping: Mapping[Monomial, Coefficient] | Iterable[tuple[Monomial, Coefficient]],
    ) -> DiffPoly:
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        acc: dict[Monomial, Coefficient] = {}
        for monomial, coeff in items:
            coeff = embed(coeff, tower_field)
            if monomial in acc:
                acc[monomial] = acc[monomial] + coeff
            else:
                acc[monomial] = coeff
        kept = [(m, c) for m, c in acc.items() if not vanishes(c)]
        kept.sort(key=lambda item: monomial_key(item[0]), reverse=True)
        return cls(tower_field, num_vars, tuple(kept))

    @classmethod
    def constant(
        cls, tower_field: TowerDescriptor, num_vars: int, value: Coefficient | int
    ) -> DiffPoly:
        return cls.from_mapping(tower_field, num_vars, [(ONE, embed(value, tower_field))])

    @classmethod
    def variable(
        cls, tower_field: TowerDescriptor, num_vars: int, index: int, order: int = 0
    ) -> DiffPoly:
        if not 0 <= index < num_vars:
            raise VariableAbsent(f"x{index + 1} is not among x1..x{num_vars}")
        monomial: Monomial = (((index, order), 1),)
        return cls(tower_field, num_vars, ((monomial, embed(1, tower_field)),))

    # --- structure ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(m == ONE for m, _ in self.terms)

    @property
    def degree(self) -> int:
        return max((monomial_degree(m) for m, _ in self.terms), default=0)

    def constant_term(self) -> Coefficient:
        for m, c in self.terms:
            if m == ONE:
                return c
        return zero(self.field)

    def variables(self) -> set[Variable]:
        return {v for m, _ in self.terms for v, _ in m}

    def involves(self, index: int) -> bool:
        return any(v[0] == index for v in self.variables())

    def order(self, index: int = 0) -> int:
        """Largest ``n`` such that x_index^(n) occurs."""
        orders = [v[1] for v in self.variables() if v[0] == index]
        if not orders:
            raise VariableAbsent(f"x{index + 1} does not occur in {self}")
        return max(orders)

    def partial(self, index: int, order: int) -> DiffPoly:
        """Formal partial derivative with respect to x_index^(order)."""
        var = (index, order)
        acc: list[tuple[Monomial, Coefficient]] = []
        for m, c in self.terms:
            exp = dict(m).get(var, 0)
            if exp:
                acc.append((_without(m, var), c * exp))
        return DiffPoly.from_mapping(self.field, self.num_vars, acc)

    def separant(self, index: int = 0) -> DiffPoly:
        return self.partial(index, self.order(index))

    def derive(self) -> DiffPoly:
        """The ring derivation: coefficients by the field derivation, x^(j) -> x^(j+1)."""
        acc: list[tuple[Monomial, Coefficient]] = []
        for m, c in self.terms:
            dc = derive(c)
            if not is_exact_zero(dc):
                acc.append((m, dc))
            for var, exp in m:
                shifted = monomial_mul(_without(m, var), (((var[0], var[1] + 1), 1),))
                acc.append((shifted, c * exp))
        return DiffPoly.from_mapping(self.field, self.num_vars, acc)

    def derive_n(self, times: int) -> DiffPoly:
        poly = self
        for _ in range(times):
            poly = poly.derive()
        return poly

    def embed(self, tower_field: TowerDescriptor, num_vars: int | None = None) -> DiffPoly:
        """Same polynomial with coefficients read in a higher stage."""
        return DiffPoly.from_mapping(
            tower_field,
            max(self.num_vars, num_vars or 0),
            [(m, embed(c, tower_field)) for m, c in self.terms],
        )

    # --- evaluation -----------------------------------------------------

    def alg_eval(self, jet: Jet) -> Coefficient:
        """f_alg at ``jet``: substitute jet[i][j] for x_i^(j), forgetting the derivation."""
        values: dict[Variable, Coefficient] = {}
        for var in self.variables():
            index, order = var
            if index >= len(jet) or order >= len(jet[index]):
                raise JetTooShort(f"jet supplies no value for x{index + 1}^({order})")
            values[var] = jet[index][order]
        target = higher_field(self.field, common_field(values.values()))
        acc: Coefficient = zero(target)
        for m, c in self.terms:
            term: Coefficient = c
            for var, exp in m:
                term = term * values[var] ** exp
            acc = acc + term
        return embed(acc, target)

    def substitute(
        self,
        provider: Callable[[Variable], Any],
        zero_value: Any,
        scalar: Callable[[Coefficient], Any] | None = None,
    ) -> Any:
        """Evaluate into any commutative ring whose elements accept coefficients."""
        acc = zero_value
        for m, c in self.terms:
            term: Any = scalar(c) if scalar else c
            for var, exp in m:
                term = term * provider(var) ** exp
            acc = acc + term
        return acc

    def diff_eval(self, values: Coefficient | Sequence[Coefficient]) -> Coefficient:
        """f evaluated at actual elements, using the field derivation for x^(j)."""
        points = list(values) if isinstance(values, list | tuple) else [values]
        jet: list[list[Coefficient]] = []
        for index, point in enumerate(points):
            depth = self.order(index) if self.involves(index) else 0
            if isinstance(point, TowerElement) and point.prec is not None:
                if point.prec - depth <= 0:
                    raise InsufficientPrecision(
                        f"x{index + 1} is known only below {point.field.variable()}^{point.prec}, "
                        f"which does not survive {depth} derivatives"
                    )
            jet.append(list(jet_of(point, depth)))
        missing = [v for v in self.variables() if v[0] >= len(points)]
        if missing:
            index = missing[0][0]
            raise JetTooShort(f"no value supplied for x{index + 1}")
        return self.alg_eval(jet)

    # --- ring operations ------------------------------------------------

    def _coerce(self, other: object) -> DiffPoly | None:
        if isinstance(other, DiffPoly):
            return other
        scalar_field = _scalar_field(other)
        if scalar_field is None:
            return None
        target = higher_field(self.field, scalar_field)
        return DiffPoly.constant(target, self.num_vars, other)  # type: ignore[arg-type]

    def _align(self, other: DiffPoly) -> tuple[DiffPoly, DiffPoly]:
        target = higher_field(self.field, other.field)
        num_vars = max(self.num_vars, other.num_vars)
        return self._lift(target, num_vars), other._lift(target, num_vars)

    def _lift(self, target: TowerDescriptor, num_vars: int) -> DiffPoly:
        if (self.field, self.num_vars) == (target, num_vars):
            return self
        return self.embed(target, num_vars)

    def __add__(self, other: object) -> DiffPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        left, right = self._align(rhs)
        return DiffPoly.from_mapping(left.field, left.num_vars, [*left.terms, *right.terms])

    __radd__ = __add__

    def __neg__(self) -> DiffPoly:
        return DiffPoly(self.field, self.num_vars, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: object) -> DiffPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> DiffPoly:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def __mul__(self, other: object) -> DiffPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        left, right = self._align(rhs)
        acc = [
            (monomial_mul(m1, m2), c1 * c2) for m1, c1 in left.terms for m2, c2 in right.terms
        ]
        return DiffPoly.from_mapping(left.field, left.num_vars, acc)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> DiffPoly:
        if isinstance(other, DiffPoly):
            if not other.is_constant:
                return NotImplemented
            other = other.constant_term()
        if _scalar_field(other) is None:
            return NotImplemented
        return self * invert(other)  # type: ignore[arg-type]

    def __pow__(self, exponent: int) -> DiffPoly:
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = DiffPoly.constant(self.field, self.num_vars, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __str__(self) -> str:
        from henselkit.diffpoly.printing import format_diffpoly

        return format_diffpoly(self)


def jet_of(a: Coefficient, n: int) -> tuple[Coefficient, ...]:
    """Jet_n(a) = (a, a', ..., a^(n))."""
    out = [a]
    for _ in range(n):
        out.append(derive(out[-1]))
    return tuple(out)


def product(polys: Sequence[DiffPoly]) -> DiffPoly:
    if not polys:
        raise ValueError("product of an empty factor list")
    result = polys[0]
    for poly in polys[1:]:
        result = result * poly
    return result
