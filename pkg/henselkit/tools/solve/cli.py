"""CLI interface for the solvers."""

from __future__ import annotations

import click

from henselkit.expr.evaluate import parse_jet, parse_rational
from henselkit.lib.config import RunConfig
from henselkit.lib.output import emit, reports_errors
from henselkit.lib.schemas import load_presentation_schema
from henselkit.series.codec import format_series, series_to_json
from henselkit.series.values import parse_value
from henselkit.solver.algebra import certify_algebra_point, solve_algebra_point
from henselkit.solver.dh import certify, iterate_stages
from henselkit.solver.hensel import hensel_lift_system
from henselkit.weil.files import build_presentation

from .builder import build_problem, height_of, parse_system, stage_for, with_retry


@click.command()
@click.option("--poly", required=True, help="Differential polynomial in x1, e.g. \"x1' - x1\"")
@click.option("--jet", required=True, help="Comma-separated c_0, ..., c_n")
@click.option("--gamma", required=True, help="Radius γ, e.g. '5' or '1,-1'")
@click.option("--terms", type=int, default=8, show_default=True, help="Taylor coefficients N")
@click.option(
    "--stages", type=int, default=1, show_default=True, help="Re-pose and solve this many times"
)
@click.option("--retry-precision", is_flag=True, help="Retry once with doubled precision")
@click.pass_obj
@reports_errors
def solve_dh(config: RunConfig, poly, jet, gamma, terms, stages, retry_precision):
    """
    Solve (f, c, γ): a differential root of f with jet in the open γ-ball around c.

    The problem lives in the lowest stage holding its data (γ with k coordinates means at
    least stage k); the solution lives one stage higher.

    \b
    Examples:
      henselkit solve-dh --poly "x1' - x1" --jet "1,1" --gamma 5 --terms 12
      henselkit solve-dh --poly "x1'^2 - 4*x1" --jet "1,2" --gamma 3 --stages 2
    """
    if retry_precision:
        config = config.model_copy(update={"retry_precision": True})

    def run(cfg: RunConfig, scale: int) -> dict:
        problem = build_problem(cfg, poly, jet, gamma)
        problem.validate()
        height = problem.field.height
        targets = [cfg.tower(height + k + 1) for k in range(stages)]
        results = iterate_stages(problem, terms * scale, targets)
        certificates = []
        for posed, b in results:
            cert = certify(posed, b)
            cert["problemStage"] = posed.field.height
            certificates.append(cert)
        document = {"poly": str(problem.poly), "jet": [format_series(c) for c in problem.jet]}
        document["gamma"] = str(problem.gamma)
        document["terms"] = terms * scale
        if stages == 1:
            document.update(certificates[0])
        else:
            document["stages"] = certificates
        return document

    emit(with_retry(config, run), config.output_format, title="solve-dh")


@click.command()
@click.option("--system", required=True, help="Polynomials separated by ';'")
@click.option("--fixed", default="", help="Values of the leading fixed variables x1..xk")
@click.option("--approx", required=True, help="Approximate values of the remaining variables")
@click.option("--target", required=True, help="Target order of the residual in the top variable")
@click.option("--retry-precision", is_flag=True, help="Retry once with doubled precision")
@click.pass_obj
@reports_errors
def hensel(config: RunConfig, system, fixed, approx, target, retry_precision):
    """
    Newton-lift a simple root of a square polynomial system.

    Variables x1..xk take the --fixed values; the rest are lifted from --approx.

    \b
    Examples:
      henselkit hensel --system "x2^2 - 1 - x1" --fixed t0 --approx 1 --target 8
    """
    if retry_precision:
        config = config.model_copy(update={"retry_precision": True})
    target_order = parse_rational(target)

    def run(cfg: RunConfig, scale: int) -> dict:
        tower_field = stage_for(cfg, [*system.split(";"), fixed, approx])
        fixed_values = parse_jet(fixed, tower_field) if fixed.strip() else []
        approx_values = parse_jet(approx, tower_field)
        polys = parse_system(system, tower_field, len(fixed_values) + len(approx_values))
        lift = hensel_lift_system(polys, fixed_values, approx_values, target_order * scale)
        return {
            "system": [str(p) for p in polys],
            "target": str(target_order * scale),
            "values": [series_to_json(v) for v in lift.values],
            "valuesText": [format_series(v) for v in lift.values],
            "iterations": lift.iterations,
            "residualOrder": None if lift.residual_order is None else str(lift.residual_order),
            "closeness": None if lift.closeness is None else str(lift.closeness),
        }

    emit(with_retry(config, run), config.output_format, title="hensel")


@click.command()
@click.option(
    "--algebra", "algebra_path", required=True, type=click.Path(exists=True, dir_okay=False)
)
@click.option("--gamma", required=True, help="Radius γ of the ball around the base point")
@click.option("--terms", type=int, default=8, show_default=True, help="Taylor coefficients N")
@click.pass_obj
@reports_errors
def solve_algebra(config: RunConfig, algebra_path, gamma, terms):
    """
    Differential point of a triangular presentation near its base point.

    The file holds {generators, relations, basePoint}; each relation is led by its highest
    generator and no generator leads two relations.

    \b
    Examples:
      henselkit solve-algebra --algebra exp.yml --gamma 5 --terms 10
    """
    radius = parse_value(gamma)
    schema = load_presentation_schema(algebra_path)
    texts = [*schema.relations, *(x for jet in (schema.base_point or {}).values() for x in jet)]
    height = max(height_of(texts), radius.length)
    presentation = build_presentation(schema, config.tower(height))
    point = solve_algebra_point(presentation, radius, terms, config.tower(height + 1))
    document = {"generators": list(presentation.generators), "gamma": str(radius)}
    document["relations"] = [str(r) for r in presentation.relations]
    document.update(certify_algebra_point(point))
    emit(document, config.output_format, title="solve-algebra")

