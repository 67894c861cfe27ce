"""CLI interface for Weil descent."""

from __future__ import annotations

import logging

import click

from henselkit.diffpoly.printing import format_diffpoly, variable_name
from henselkit.lib.config import RunConfig
from henselkit.lib.errors import BasisNotDeclaredSeparated
from henselkit.lib.output import emit, reports_errors
from henselkit.lib.schemas import load_presentation_schema, save_document
from henselkit.series.codec import format_series
from henselkit.series.values import parse_value
from henselkit.weil.algebra import FiniteFreeAlgebra, ValuedBasis
from henselkit.weil.bounds import continuity_bound, is_separated_sample, separated_lower_bound
from henselkit.weil.descent import (
    DescendedPresentation,
    descend,
    descent_derivation_table,
    point_key,
    tau,
    tau_inverse,
)
from henselkit.weil.extensions import linear_span_basis
from henselkit.weil.files import build_extension_presentation, load_extension

from .points import parse_coordinates, parse_k_point, parse_l_point

_LOG = logging.getLogger(__name__)

EXTENSION_HELP = "Shipped extension (gaussian, ramified-quadratic) or an extension file"


def _descended(config: RunConfig, algebra_path: str, extension: str) -> DescendedPresentation:
    algebra = load_extension(extension, config.precision[0])
    presentation = build_extension_presentation(load_presentation_schema(algebra_path), algebra)
    return descend(presentation)


@click.command()
@click.option(
    "--algebra", "algebra_path", required=True, type=click.Path(exists=True, dir_okay=False)
)
@click.option("--extension", required=True, help=EXTENSION_HELP)
@click.option(
    "--derivation-order",
    type=int,
    default=0,
    show_default=True,
    help="Tabulate the descent derivation on x^(k)(i) for k up to this order",
)
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Also save as YAML")
@click.pass_obj
@reports_errors
def weil_descend(config: RunConfig, algebra_path, extension, derivation_order, output):
    """
    Weil descent of a presented algebra along L/K.

    Each relation over L splits into one relation over K per basis coordinate; x1(2) is the
    second coordinate of x1.

    \b
    Examples:
      henselkit weil-descend --algebra circle.yml --extension gaussian
      henselkit weil-descend --algebra exp.yml --extension ramified-quadratic --derivation-order 1
    """
    desc = _descended(config, algebra_path, extension)
    algebra = desc.source.algebra
    document = desc.to_json()
    document["basis"] = list(algebra.labels)
    document["axioms"] = algebra.check_axioms()
    table = descent_derivation_table(desc, derivation_order)
    document["derivation"] = {
        desc.name(var): format_diffpoly(poly, desc.name) for var, poly in table.items()
    }
    if output:
        save_document(document, output)
        _LOG.info("saved descent to %s", output)
    emit(document, config.output_format, title="weil-descend")


@click.command()
@click.option(
    "--algebra", "algebra_path", required=True, type=click.Path(exists=True, dir_okay=False)
)
@click.option("--extension", required=True, help=EXTENSION_HELP)
@click.option("--point", required=True, help="e.g. 'x1(1)=0, x1(2)=1', or 'x1=i' with --inverse")
@click.option("--inverse", is_flag=True, help="Map an L-point of B to a K-point of W(B)")
@click.pass_obj
@reports_errors
def weil_tau(config: RunConfig, algebra_path, extension, point, inverse):
    """
    The correspondence between K-points of W(B) and L-points of B.

    \b
    Examples:
      henselkit weil-tau --algebra circle.yml --extension gaussian --point "x1(1)=0, x1(2)=1"
      henselkit weil-tau --algebra circle.yml --extension gaussian --point "x1=i" --inverse
    """
    desc = _descended(config, algebra_path, extension)
    algebra = desc.source.algebra
    if inverse:
        l_point = parse_l_point(point, algebra, desc.source.num_generators)
        k_point = tau_inverse(l_point, desc)
    else:
        k_point = parse_k_point(point, desc)
        l_point = tau(k_point, desc)
    back = tau_inverse(l_point, desc)
    document = {
        "extension": algebra.name,
        "direction": "L->K" if inverse else "K->L",
        "kPoint": {desc.name(var): format_series(v) for var, v in sorted(k_point.items())},
        "lPoint": {variable_name(var): str(v) for var, v in sorted(l_point.items())},
        "roundTrip": point_key(back) == point_key(k_point),
    }
    emit(document, config.output_format, title="weil-tau")


def _basis(config: RunConfig, extension: str) -> FiniteFreeAlgebra | ValuedBasis:
    if extension == "linear-span":
        return linear_span_basis(config.precision[0])
    return load_extension(extension, config.precision[0])


@click.command()
@click.option(
    "--extension",
    required=True,
    help="Shipped extension, 'linear-span' for the (1, 1+t0) basis, or an extension file",
)
@click.option("--phi", required=True, help="Coordinates φ̃(a(i)), comma-separated")
@click.option("--psi", required=True, help="Coordinates ψ̃(a(i)), comma-separated")
@click.option("--gamma", required=True, help="Radius γ")
@click.pass_obj
@reports_errors
def weil_check_bounds(config: RunConfig, extension, phi, psi, gamma):
    """
    Check the valuation bounds between the coordinates of two points and their images in L.

    Continuity: coordinates within γ - ε force the images within γ. Separated bases also
    bound each coordinate below by w(φ(a) - ψ(a)) - w(b_j).

    \b
    Examples:
      henselkit weil-check-bounds --extension gaussian --phi "3, 2" --psi "1, 2" --gamma -1
      henselkit weil-check-bounds --extension linear-span --phi "1, 0" --psi "0, 1" --gamma 0
    """
    source = _basis(config, extension)
    basis = source.basis if isinstance(source, FiniteFreeAlgebra) else source
    phi_coords = parse_coordinates(phi, basis)
    psi_coords = parse_coordinates(psi, basis)
    radius = parse_value(gamma)
    diffs = [a - b for a, b in zip(phi_coords, psi_coords)]
    document: dict = {
        "basis": list(basis.labels),
        "valuations": [str(w) for w in basis.valuations],
        "epsilon": str(basis.epsilon),
        "gamma": str(radius),
        "separatedSample": is_separated_sample(basis, [diffs]),
    }
    document["continuity"] = continuity_bound(basis, phi_coords, psi_coords, radius).to_json()
    try:
        document["separated"] = separated_lower_bound(basis, phi_coords, psi_coords).to_json()
    except BasisNotDeclaredSeparated as err:
        document["separated"] = {"skipped": err.message}
    emit(document, config.output_format, title="weil-check-bounds")
