"""Build extensions and presentations from their file schemas."""

from __future__ import annotations

from pathlib import Path

from henselkit.expr.evaluate import parse_diffpoly, parse_series
from henselkit.lib.errors import InputError
from henselkit.lib.schemas import (
    ExtensionSchema,
    PresentationSchema,
    load_extension_schema,
    load_presentation_schema,
)
from henselkit.series.tower import DEFAULT_PRECISION, Coefficient, TowerDescriptor, level_of
from henselkit.series.values import parse_value
from henselkit.solver.algebra import AlgebraPresentation
from henselkit.weil.algebra import FiniteFreeAlgebra, ValuedBasis
from henselkit.weil.descent import ExtensionPresentation
from henselkit.weil.extensions import gaussian_rationals, ramified_quadratic


def build_extension(
    schema: ExtensionSchema, precision: int = DEFAULT_PRECISION
) -> FiniteFreeAlgebra:
    base = TowerDescriptor.build(schema.base_level, schema.ramification, [precision])
    size = schema.dim

    def read(text: str) -> Coefficient:
        return parse_series(text, base)

    structure = tuple(
        tuple(tuple(read(x) for x in entry) for entry in row) for row in schema.structure_constants
    )
    derivation = tuple(tuple(read(x) for x in row) for row in schema.derivation_matrix)
    unit_text = schema.unit or ["1"] + ["0"] * (size - 1)
    realization = None
    if schema.realization is not None:
        fine = TowerDescriptor.build(
            max(schema.base_level, 1), schema.realization.ramification, [precision]
        )
        realization = tuple(parse_series(x, fine) for x in schema.realization.elements)
    basis = ValuedBasis(
        tuple(schema.basis_labels),
        tuple(parse_value(v) for v in schema.basis_valuations),
        base,
        realization=realization,
        separated=schema.separated,
    )
    return FiniteFreeAlgebra(
        basis, structure, derivation, tuple(read(x) for x in unit_text), name=schema.name
    )


def load_extension(source: str | Path, precision: int = DEFAULT_PRECISION) -> FiniteFreeAlgebra:
    """A shipped extension by name, or an extension file."""
    if str(source) == "gaussian":
        return gaussian_rationals()
    if str(source) == "ramified-quadratic":
        return ramified_quadratic(precision)
    return build_extension(load_extension_schema(source), precision)


def build_extension_presentation(
    schema: PresentationSchema, algebra: FiniteFreeAlgebra
) -> ExtensionPresentation:
    return ExtensionPresentation.parse(algebra, schema.generators, schema.relations)


def build_presentation(
    schema: PresentationSchema, tower_field: TowerDescriptor | None = None
) -> AlgebraPresentation:
    """An AlgebraPresentation over K; series literals decide the stage unless one is given."""
    width = len(schema.generators)
    if tower_field is None:
        heights = [parse_diffpoly(r, num_vars=width).field.height for r in schema.relations]
        if schema.base_point:
            values = [x for jet in schema.base_point.values() for x in jet]
            heights += [level_of(parse_series(x)) for x in values]
        tower_field = TowerDescriptor.build(max(heights, default=0))
    relations = tuple(parse_diffpoly(r, tower_field, width) for r in schema.relations)
    base_point = None
    if schema.base_point is not None:
        unknown = set(schema.base_point) - set(schema.generators)
        if unknown:
            raise InputError(f"base point names unknown generators: {', '.join(sorted(unknown))}")
        base_point = {
            name: tuple(parse_series(x, tower_field) for x in jet)
            for name, jet in schema.base_point.items()
        }
    return AlgebraPresentation(tuple(schema.generators), relations, base_point)


def load_presentation(
    path: str | Path, tower_field: TowerDescriptor | None = None
) -> AlgebraPresentation:
    return build_presentation(load_presentation_schema(path), tower_field)
