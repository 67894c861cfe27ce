"""Finite free extensions L/K: a valued basis, structure constants and a derivation matrix.

Elements of L are coordinate tuples over the basis. Coordinates are usually elements of K,
but they may also be differential polynomials over K, which is how W(L[T]) ⊗ L is modelled
during descent.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from henselkit.diffpoly.poly import DiffPoly
from henselkit.lib.errors import BasisNotDeclaredSeparated, InputError
from henselkit.series.tower import (
    Coefficient,
    TowerDescriptor,
    TowerElement,
    common_field,
    derive,
    embed,
    is_exact_zero,
    recast,
    valuation,
    zero,
)
from henselkit.series.values import ValueVec, min_value


@dataclass(frozen=True)
class ValuedBasis:
    """Basis b_1..b_l of L over K with w(b_i).

    ``realization`` optionally gives each b_i as a series in a stage of the same height as K
    (possibly with finer ramification); it is what lets w be computed on arbitrary sums.
    ``separated`` marks bases known to satisfy w(Σ a_i b_i) = min_i w(a_i b_i).
    """

    labels: tuple[str, ...]
    valuations: tuple[ValueVec, ...]
    base: TowerDescriptor
    realization: tuple[Coefficient, ...] | None = None
    separated: bool = False

    def __post_init__(self) -> None:
        if not self.labels:
            raise InputError("a basis needs at least one element")
        if len(set(self.labels)) != len(self.labels):
            raise InputError("basis labels must be distinct")
        if len(self.valuations) != len(self.labels):
            raise InputError(
                f"{len(self.labels)} basis elements but {len(self.valuations)} valuations"
            )
        if self.realization is not None and len(self.realization) != len(self.labels):
            raise InputError("realization must give one series per basis element")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def epsilon(self) -> ValueVec:
        """ε = min_i w(b_i)."""
        return min_value(list(self.valuations))

    @property
    def realization_field(self) -> TowerDescriptor:
        assert self.realization is not None
        return common_field(self.realization)

    def realize(self, coords: Sequence[Coefficient]) -> Coefficient:
        """Σ a_i b_i as a series, using the realization of the basis."""
        if self.realization is None:
            raise InputError("basis has no series realization")
        target = self.realization_field
        total: Coefficient = zero(target)
        for a, b in zip(coords, self.realization):
            total = total + recast(a, target) * b
        return total

    def term_values(self, coords: Sequence[Coefficient]) -> list[ValueVec]:
        """w(a_i b_i) for every i."""
        if self.realization is not None:
            target = self.realization_field
            return [valuation(recast(a, target) * b) for a, b in zip(coords, self.realization)]
        return [valuation(a) + w for a, w in zip(coords, self.valuations)]

    def value(self, coords: Sequence[Coefficient]) -> ValueVec:
        """w(Σ a_i b_i)."""
        if self.realization is not None:
            return valuation(self.realize(coords))
        if self.separated:
            return min_value(self.term_values(coords))
        raise BasisNotDeclaredSeparated(
            "w of a sum needs either a realization or a basis declared separated"
        )


@dataclass(frozen=True)
class FiniteFreeAlgebra:
    """L = ⊕ K b_i with b_i b_j = Σ_m c[i][j][m] b_m and ∂b_i = Σ_m d[i][m] b_m."""

    basis: ValuedBasis
    structure: tuple[tuple[tuple[Coefficient, ...], ...], ...]
    derivation: tuple[tuple[Coefficient, ...], ...]
    unit: tuple[Coefficient, ...]
    name: str = "L"

    def __post_init__(self) -> None:
        size = self.dim
        if len(self.structure) != size or any(
            len(row) != size or any(len(entry) != size for entry in row) for row in self.structure
        ):
            raise InputError(f"structure constants must form a {size}x{size}x{size} array")
        if len(self.derivation) != size or any(len(row) != size for row in self.derivation):
            raise InputError(f"the derivation matrix must be {size}x{size}")
        if len(self.unit) != size:
            raise InputError(f"unit coordinates must have {size} entries")

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def field(self) -> TowerDescriptor:
        return self.basis.base

    @property
    def labels(self) -> tuple[str, ...]:
        return self.basis.labels

    # --- elements -------------------------------------------------------

    def element(self, coords: Sequence[Any]) -> AlgebraElement:
        if len(coords) != self.dim:
            raise InputError(f"{len(coords)} coordinates given, the basis has {self.dim}")
        return AlgebraElement(self, tuple(_normalize(self.field, coords)))

    def zero(self) -> AlgebraElement:
        return self.element([zero(self.field)] * self.dim)

    def one(self) -> AlgebraElement:
        return self.element(self.unit)

    def basis_element(self, index: int) -> AlgebraElement:
        return self.element([1 if m == index else 0 for m in range(self.dim)])

    def label_index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as err:
            raise InputError(f"'{label}' is not a basis label of {self.name}") from err

    def lift(self, value: Any) -> AlgebraElement:
        """An element of L from an element of L, a scalar of K or a polynomial over K."""
        if isinstance(value, AlgebraElement):
            if value.algebra is not self and value.algebra != self:
                raise InputError("elements of different extensions do not mix")
            return value
        return self.element([value * u for u in self.unit])

    def coordinates(self, value: Any) -> tuple[Any, ...]:
        """λ_1(ξ), ..., λ_l(ξ)."""
        if isinstance(value, list | tuple):
            return self.element(value).coords
        return self.lift(value).coords

    def product(self, a: Sequence[Any], b: Sequence[Any]) -> list[Any]:
        out: list[Any] = [zero(self.field)] * self.dim
        for i, x in enumerate(a):
            if _is_zero(x):
                continue
            for j, y in enumerate(b):
                if _is_zero(y):
                    continue
                xy = x * y
                for m, c in enumerate(self.structure[i][j]):
                    if not is_exact_zero(c):
                        out[m] = xy * c + out[m]
        return out

    def derivation_part(self, coords: Sequence[Any]) -> list[Any]:
        """Σ_i a_i ∂b_i."""
        out: list[Any] = [zero(self.field)] * self.dim
        for i, a in enumerate(coords):
            if _is_zero(a):
                continue
            for m, d in enumerate(self.derivation[i]):
                if not is_exact_zero(d):
                    out[m] = a * d + out[m]
        return out

    # --- axioms ---------------------------------------------------------

    def check_axioms(self) -> dict[str, bool]:
        """Associativity, commutativity, unit and Leibniz on basis elements."""
        basis = [self.basis_element(i) for i in range(self.dim)]
        one = self.one()
        report = {
            "associative": all(
                (a * b) * c == a * (b * c) for a in basis for b in basis for c in basis
            ),
            "commutative": all(a * b == b * a for a in basis for b in basis),
            "unit": all(one * a == a for a in basis),
            "leibniz": all(
                (a * b).derive() == a.derive() * b + a * b.derive() for a in basis for b in basis
            ),
        }
        if self.basis.realization is not None:
            realized = self.basis.realization
            report["realization"] = all(
                self.basis.realize((a * b).coords) == realized[i] * realized[j]
                for i, a in enumerate(basis)
                for j, b in enumerate(basis)
            )
        return report


def _is_zero(value: Any) -> bool:
    if isinstance(value, DiffPoly):
        return value.is_zero
    return is_exact_zero(value)


def _normalize(tower_field: TowerDescriptor, coords: Sequence[Any]) -> list[Any]:
    """Embed scalar coordinates in K; when any coordinate is a polynomial, make all of them so."""
    polys = [c for c in coords if isinstance(c, DiffPoly)]
    if not polys:
        return [embed(c, tower_field) for c in coords]
    width = max(p.num_vars for p in polys)
    out = []
    for c in coords:
        if isinstance(c, DiffPoly):
            out.append(c.embed(tower_field, width) if c.num_vars != width else c)
        else:
            out.append(DiffPoly.constant(tower_field, width, c))
    return out


@dataclass(frozen=True)
class AlgebraElement:
    algebra: FiniteFreeAlgebra
    coords: tuple[Any, ...]

    @property
    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coords)

    def _other(self, other: object) -> AlgebraElement | None:
        if isinstance(other, AlgebraElement):
            return self.algebra.lift(other)
        if isinstance(other, int | Fraction | TowerElement | DiffPoly):
            return self.algebra.lift(other)
        return None

    def __eq__(self, other: object) -> bool:
        rhs = self._other(other)
        if rhs is None:
            return NotImplemented
        return (self - rhs).is_zero

    def __hash__(self) -> int:
        return hash((self.algebra.labels, len(self.coords)))

    def __add__(self, other: object) -> AlgebraElement:
        rhs = self._other(other)
        if rhs is None:
            return NotImplemented
        return self.algebra.element([a + b for a, b in zip(self.coords, rhs.coords)])

    __radd__ = __add__

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.algebra, tuple(-a for a in self.coords))

    def __sub__(self, other: object) -> AlgebraElement:
        rhs = self._other(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> AlgebraElement:
        lhs = self._other(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def __mul__(self, other: object) -> AlgebraElement:
        if isinstance(other, AlgebraElement):
            rhs = self.algebra.lift(other)
            return self.algebra.element(self.algebra.product(self.coords, rhs.coords))
        if self._other(other) is None:
            return NotImplemented
        return self.algebra.element([a * other for a in self.coords])

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> AlgebraElement:
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = self.algebra.one()
        for _ in range(exponent):
            result = result * self
        return result

    def derive(self, coordinate_derivation: Callable[[Any], Any] | None = None) -> AlgebraElement:
        """Σ D(a_i) b_i + Σ a_i ∂b_i; D defaults to the derivation of K (or of K{T})."""
        step = coordinate_derivation or _derive_coordinate
        moved = [step(a) for a in self.coords]
        rest = self.algebra.derivation_part(self.coords)
        return self.algebra.element([a + b for a, b in zip(moved, rest)])

    def __str__(self) -> str:
        parts = []
        for label, c in zip(self.algebra.labels, self.coords):
            if not _is_zero(c):
                parts.append(f"({c})*{label}")
        return " + ".join(parts) or "0"


def _derive_coordinate(value: Any) -> Any:
    if isinstance(value, DiffPoly):
        return value.derive()
    return derive(value)
