"""CLI interface for parsing and the twisted Taylor morphism."""

from __future__ import annotations

import click

from henselkit.diffpoly.poly import jet_of
from henselkit.expr.evaluate import parse_diffpoly, parse_jet, parse_series
from henselkit.expr.grammar import max_diff_index, parse_expression
from henselkit.lib.config import RunConfig
from henselkit.lib.output import emit, reports_errors
from henselkit.series.codec import format_series, series_to_json
from henselkit.series.tower import TowerElement
from henselkit.taylor.morphism import apply_morphism, check_valued_taylor, twisted_taylor
from henselkit.taylor.prolong import check_point, prolong
from henselkit.tools.solve.builder import check_jet_length, stage_for


@click.command()
@click.argument("text")
@click.option(
    "--kind",
    type=click.Choice(["auto", "series", "diffpoly"], case_sensitive=False),
    default="auto",
    show_default=True,
    help="How to read TEXT; auto picks diffpoly when any x<i> occurs",
)
@click.pass_obj
@reports_errors
def parse(config: RunConfig, text, kind):
    """
    Echo the normal form of TEXT.

    \b
    Examples:
      henselkit parse "x1^(2) + x1''"
      henselkit parse "1 + t0 + (1/2)*t0^2 + O(t0^3)"
    """
    node = parse_expression(text)
    if kind == "auto":
        kind = "diffpoly" if max_diff_index(node) > 0 else "series"
    tower_field = stage_for(config, [text])
    document: dict = {"input": text, "kind": kind, "stage": tower_field.height}
    if kind == "diffpoly":
        poly = parse_diffpoly(text, tower_field)
        document["normalForm"] = str(poly)
        document["variables"] = poly.num_vars
        document["degree"] = poly.degree
    else:
        value = parse_series(text, tower_field)
        document["normalForm"] = format_series(value)
        document["json"] = series_to_json(value)
    emit(document, config.output_format, title="parse")


@click.command()
@click.option("--poly", required=True, help="Differential polynomial in x1")
@click.option("--jet", required=True, help="Algebraic point c_0, ..., c_n of f")
@click.option("--terms", type=int, default=8, show_default=True, help="Taylor coefficients N")
@click.option("--apply", "apply_text", help="Also send this polynomial in x1 through T*")
@click.pass_obj
@reports_errors
def taylor(config: RunConfig, poly, jet, terms, apply_text):
    """
    Prolong an algebraic point of f and take its twisted Taylor image.

    \b
    Examples:
      henselkit taylor --poly "x1' - x1" --jet "1,1" --terms 6
      henselkit taylor --poly "x1' - x1" --jet "1,1" --apply "x1^2"
    """
    tower_field = stage_for(config, [poly, jet, apply_text or ""])
    f = parse_diffpoly(poly, tower_field, num_vars=1)
    c = parse_jet(jet, tower_field)
    check_jet_length(f, c)
    check_point(f, c)
    n = f.order()
    point = prolong(f, c, max(terms - 1, n))
    target = config.tower(tower_field.height + 1)
    alpha = twisted_taylor(point, terms, target)
    derivatives = jet_of(alpha, min(n, terms - 1))
    document: dict = {
        "poly": str(f),
        "jet": [format_series(x) for x in c],
        "prolonged": [format_series(v) for v in point.values[:terms]],
        "image": format_series(alpha),
        "imageJson": series_to_json(alpha),
        "constantTerms": [
            format_series(d.coefficient(0) if isinstance(d, TowerElement) else d)
            for d in derivatives
        ],
        "valued": check_valued_taylor(point, alpha),
    }
    if apply_text:
        p = parse_diffpoly(apply_text, tower_field, num_vars=1)
        image = apply_morphism(point, p, terms, target)
        document["applied"] = {"poly": str(p), "image": format_series(image)}
    emit(document, config.output_format, title="taylor")
