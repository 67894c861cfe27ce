"""Classical and differential Weil descent along a finite free extension L/K.

A presented L-algebra has generators x1..xm; its relations are polynomials over K in those
generators and in the basis labels of L. Descent replaces each x_a^(k) by Σ_i x_a^(k)(i)·b_i,
multiplies out with the structure constants and keeps the basis coordinates. The descended
variable x_a^(k)(i) is stored as variable index a·l + i of order k.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from henselkit.diffpoly.poly import DiffPoly, Variable
from henselkit.diffpoly.printing import format_diffpoly, variable_name
from henselkit.expr.evaluate import DiffPolyContext, SeriesContext, safe_evaluate
from henselkit.lib.errors import (
    DescentVerificationError,
    InputError,
    JetTooShort,
    RelationViolated,
    UnknownVariable,
)
from henselkit.series.tower import Coefficient, derive, embed, vanishes
from henselkit.weil.algebra import AlgebraElement, FiniteFreeAlgebra

_LOG = logging.getLogger(__name__)

KPoint = dict[Variable, Coefficient]
LPoint = dict[Variable, AlgebraElement]


class ExtensionContext(DiffPolyContext):
    """x1..xm are generators; basis labels of L become the variables after them."""

    def __init__(self, algebra: FiniteFreeAlgebra, num_generators: int):
        super().__init__(algebra.field, num_generators + algebra.dim)
        self.algebra = algebra
        self.num_generators = num_generators

    def diff_variable(self, index: int, order: int) -> DiffPoly:
        if not 1 <= index <= self.num_generators:
            raise UnknownVariable(f"x{index} is not among x1..x{self.num_generators}")
        return super().diff_variable(index, order)

    def label(self, name: str) -> DiffPoly:
        try:
            position = self.algebra.labels.index(name)
        except ValueError as err:
            raise UnknownVariable(f"'{name}' is not a basis label of {self.algebra.name}") from err
        return DiffPoly.variable(self.field, self.num_vars, self.num_generators + position)


class ElementContext(SeriesContext):
    """Elements of L written with the basis labels, e.g. ``3 + 4*i``."""

    def __init__(self, algebra: FiniteFreeAlgebra):
        super().__init__(algebra.field)
        self.algebra = algebra

    def label(self, name: str) -> AlgebraElement:
        return self.algebra.basis_element(self.algebra.label_index(name))


def parse_element(text: str, algebra: FiniteFreeAlgebra) -> AlgebraElement:
    return algebra.lift(safe_evaluate(text, ElementContext(algebra)))


def coordinates(xi: Any, algebra: FiniteFreeAlgebra) -> tuple[Any, ...]:
    """λ_i(ξ) for ξ given as text, a coordinate list, a scalar or an element of L."""
    if isinstance(xi, str):
        xi = parse_element(xi, algebra)
    return algebra.coordinates(xi)


@dataclass(frozen=True)
class ExtensionPresentation:
    algebra: FiniteFreeAlgebra
    generators: tuple[str, ...]
    relations: tuple[DiffPoly, ...] = ()

    def __post_init__(self) -> None:
        expected = tuple(f"x{i + 1}" for i in range(len(self.generators)))
        if self.generators != expected:
            raise InputError(f"generators must be named {', '.join(expected)} in order")

    @classmethod
    def parse(
        cls, algebra: FiniteFreeAlgebra, generators: Sequence[str], relations: Iterable[str]
    ) -> ExtensionPresentation:
        context = ExtensionContext(algebra, len(generators))
        parsed = []
        for text in relations:
            value = safe_evaluate(text, context)
            if not isinstance(value, DiffPoly):
                value = DiffPoly.constant(context.field, context.num_vars, value)
            parsed.append(value.embed(context.field, context.num_vars))
        return cls(algebra, tuple(generators), tuple(parsed))

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def name(self, var: Variable) -> str:
        index, _ = var
        if index < self.num_generators:
            return variable_name(var)
        return self.algebra.labels[index - self.num_generators]

    def relation_texts(self) -> list[str]:
        return [format_diffpoly(r, self.name) for r in self.relations]

    def evaluate(self, relation: DiffPoly, point: Callable[[Variable], Any]) -> AlgebraElement:
        """Evaluate ``relation`` in L (or in W(L[T]) ⊗ L) with generator values from ``point``."""
        algebra = self.algebra

        def provider(var: Variable) -> Any:
            index, _ = var
            if index < self.num_generators:
                return point(var)
            return algebra.basis_element(index - self.num_generators)

        return relation.substitute(provider, algebra.zero(), algebra.lift)


@dataclass(frozen=True)
class DescendedPresentation:
    """W(B) as a presentation over K; ``origin[k]`` is the (relation, coordinate) of relation k."""

    source: ExtensionPresentation
    relations: tuple[DiffPoly, ...]
    origin: tuple[tuple[int, int], ...]

    @property
    def dim(self) -> int:
        return self.source.algebra.dim

    @property
    def num_vars(self) -> int:
        return self.source.num_generators * self.dim

    def variable(self, generator: int, coordinate: int, order: int = 0) -> Variable:
        return (generator * self.dim + coordinate, order)

    def split(self, var: Variable) -> tuple[int, int, int]:
        """(generator, coordinate, order) of a descended variable."""
        index, order = var
        return index // self.dim, index % self.dim, order

    def name(self, var: Variable) -> str:
        generator, coordinate, order = self.split(var)
        return f"{variable_name((generator, order))}({coordinate + 1})"

    def generator_names(self, order: int = 0) -> list[str]:
        return [self.name((index, order)) for index in range(self.num_vars)]

    def relation_texts(self) -> list[str]:
        return [format_diffpoly(r, self.name) for r in self.relations]

    def lifted_generator(self, generator: int, order: int) -> AlgebraElement:
        """Σ_i x^(order)(i)·b_i with polynomial coordinates."""
        algebra = self.source.algebra
        coords = [
            DiffPoly.variable(algebra.field, self.num_vars, generator * self.dim + i, order)
            for i in range(self.dim)
        ]
        return algebra.element(coords)

    def to_json(self) -> dict[str, Any]:
        sources = self.source.relation_texts()
        return {
            "extension": self.source.algebra.name,
            "generators": self.generator_names(),
            "relations": self.relation_texts(),
            "origin": [
                {"relation": r + 1, "coordinate": c + 1, "source": sources[r]}
                for r, c in self.origin
            ],
        }


def descend(presentation: ExtensionPresentation) -> DescendedPresentation:
    """W(B): every relation f over L contributes the coordinates of f(Σ_i x(i) b_i)."""
    algebra = presentation.algebra
    empty = DescendedPresentation(presentation, (), ())
    relations: list[DiffPoly] = []
    origin: list[tuple[int, int]] = []
    width = empty.num_vars
    for r, relation in enumerate(presentation.relations):
        value = presentation.evaluate(
            relation, lambda var: empty.lifted_generator(var[0], var[1])
        )
        for i, coordinate in enumerate(value.coords):
            poly = _as_poly(coordinate, algebra, width)
            if poly.is_zero:
                continue
            relations.append(poly)
            origin.append((r, i))
    _LOG.debug("descended %d relations into %d", len(presentation.relations), len(relations))
    return DescendedPresentation(presentation, tuple(relations), tuple(origin))


def _as_poly(value: Any, algebra: FiniteFreeAlgebra, width: int) -> DiffPoly:
    if isinstance(value, DiffPoly):
        return value.embed(algebra.field, width)
    return DiffPoly.constant(algebra.field, width, value)


# --- the τ correspondence ----------------------------------------------------


def _jet(point: Mapping[Variable, Coefficient], width: int) -> list[list[Coefficient]]:
    jet: list[list[Coefficient]] = [[] for _ in range(width)]
    for index in range(width):
        order = 0
        while (index, order) in point:
            jet[index].append(point[(index, order)])
            order += 1
    return jet


def tau(point: Mapping[Variable, Coefficient], desc: DescendedPresentation) -> LPoint:
    """K-point of W(B) -> L-point of B: x^(k) ↦ Σ_i φ̃(x^(k)(i))·b_i."""
    jet = _jet(point, desc.num_vars)
    for relation, text in zip(desc.relations, desc.relation_texts()):
        try:
            value = relation.alg_eval(jet)
        except JetTooShort as err:
            raise RelationViolated(f"point does not assign every variable of {text}") from err
        if not vanishes(value):
            raise RelationViolated(f"point does not kill the descended relation {text}")
    algebra = desc.source.algebra
    out: LPoint = {}
    for generator in range(desc.source.num_generators):
        order = 0
        while all(desc.variable(generator, i, order) in point for i in range(desc.dim)):
            coords = [point[desc.variable(generator, i, order)] for i in range(desc.dim)]
            out[(generator, order)] = algebra.element(coords)
            order += 1
    return out


def tau_inverse(point: Mapping[Variable, Any], desc: DescendedPresentation) -> KPoint:
    """L-point of B -> K-point of W(B): x^(k)(i) ↦ λ_i(φ(x^(k)))."""
    source = desc.source
    algebra = source.algebra
    values = {var: algebra.lift(value) for var, value in point.items()}

    def provider(var: Variable) -> AlgebraElement:
        if var not in values:
            raise RelationViolated(f"point assigns no value to {variable_name(var)}")
        return values[var]

    for relation, text in zip(source.relations, source.relation_texts()):
        if not source.evaluate(relation, provider).is_zero:
            raise RelationViolated(f"point does not kill {text}")
    out: KPoint = {}
    for (generator, order), value in sorted(values.items()):
        for i, c in enumerate(value.coords):
            out[desc.variable(generator, i, order)] = embed(c, algebra.field)
    return out


# --- the descent derivation ----------------------------------------------------


def descent_derivation(desc: DescendedPresentation, var: Variable) -> DiffPoly:
    """δ^W(x_j(i)) = x_{j+1}(i) - Σ_m x_j(m)·d[m][i]."""
    algebra = desc.source.algebra
    generator, i, order = desc.split(var)
    result = DiffPoly.variable(algebra.field, desc.num_vars, generator * desc.dim + i, order + 1)
    for m in range(desc.dim):
        d = algebra.derivation[m][i]
        if vanishes(d):
            continue
        x = DiffPoly.variable(algebra.field, desc.num_vars, generator * desc.dim + m, order)
        result = result - x * d
    return result


def apply_descent_derivation(
    poly: DiffPoly, rule: Callable[[Variable], DiffPoly]
) -> DiffPoly:
    """The derivation of K{x(i)} extending ∂ on K and ``rule`` on the variables."""
    moved = [(m, derive(c)) for m, c in poly.terms]
    result = DiffPoly.from_mapping(poly.field, poly.num_vars, moved)
    for var in sorted(poly.variables()):
        result = result + poly.partial(*var) * rule(var)
    return result


def verify_descent_derivation(desc: DescendedPresentation, generator: int, order: int) -> None:
    """(δ^W ⊗ id + id ⊗ ∂)(Σ_i x_j(i) b_i) must equal Σ_i x_{j+1}(i) b_i."""
    lifted = desc.lifted_generator(generator, order)
    image = lifted.derive(lambda p: apply_descent_derivation(p, _rule(desc)))
    expected = desc.lifted_generator(generator, order + 1)
    if not (image - expected).is_zero:
        raise DescentVerificationError(
            f"descent derivation is not a differential homomorphism on "
            f"{variable_name((generator, order))}"
        )


def _rule(desc: DescendedPresentation) -> Callable[[Variable], DiffPoly]:
    return lambda var: descent_derivation(desc, var)


def descent_derivation_table(
    desc: DescendedPresentation, max_order: int = 0
) -> dict[Variable, DiffPoly]:
    """δ^W on every descended variable up to ``max_order``, each verified."""
    table: dict[Variable, DiffPoly] = {}
    for generator in range(desc.source.num_generators):
        for order in range(max_order + 1):
            verify_descent_derivation(desc, generator, order)
            for i in range(desc.dim):
                var = desc.variable(generator, i, order)
                table[var] = descent_derivation(desc, var)
    return table


def derive_relations(desc: DescendedPresentation) -> list[DiffPoly]:
    """δ^W applied to each descended relation."""
    rule = _rule(desc)
    return [apply_descent_derivation(r, rule) for r in desc.relations]


# --- brute-force point enumeration ---------------------------------------------


def descended_grid(desc: DescendedPresentation, values: Sequence[Coefficient]) -> list[KPoint]:
    """All K-points of an algebraic W(B) with coordinates drawn from ``values``."""
    variables = [(index, 0) for index in range(desc.num_vars)]
    found: list[KPoint] = []
    for combo in itertools.product(values, repeat=len(variables)):
        point = dict(zip(variables, combo))
        jet = _jet(point, desc.num_vars)
        if all(vanishes(r.alg_eval(jet)) for r in desc.relations):
            found.append(point)
    return found


def extension_grid(
    presentation: ExtensionPresentation, values: Sequence[Coefficient]
) -> list[LPoint]:
    """All L-points of an algebraic B whose coordinates are drawn from ``values``."""
    algebra = presentation.algebra
    elements = [algebra.element(c) for c in itertools.product(values, repeat=algebra.dim)]
    found: list[LPoint] = []
    for combo in itertools.product(elements, repeat=presentation.num_generators):
        point = {(g, 0): value for g, value in enumerate(combo)}
        if all(
            presentation.evaluate(r, point.__getitem__).is_zero for r in presentation.relations
        ):
            found.append(point)
    return found


def point_key(point: Mapping[Variable, Any]) -> tuple[Any, ...]:
    """Hashable form of a point, for comparing point sets."""
    out = []
    for var in sorted(point):
        value = point[var]
        coords = value.coords if isinstance(value, AlgebraElement) else (value,)
        out.append((var, tuple(str(c) for c in coords)))
    return tuple(out)
