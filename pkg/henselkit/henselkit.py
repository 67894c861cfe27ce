"""
henselkit - differentially henselian fields at desk scale

Tools:
  parse              Echo the normal form of a series or differential polynomial
  taylor             Twisted Taylor image of a prolonged algebraic point
  solve-dh           Solve a differentially henselian problem one tower stage up
  hensel             Newton-lift a simple root of a polynomial system
  solve-algebra      Differential point of a triangular presentation
  weil-descend       Weil descent of a presented algebra along L/K
  weil-tau           The τ correspondence between points of W(B) and of B
  weil-check-bounds  Continuity and separated-basis valuation bounds
  check              Seeded property suites
"""

import click

from henselkit import __version__
from henselkit.lib.config import resolve_config
from henselkit.lib.logging import setup_logging
from henselkit.lib.output import reports_errors
from henselkit.tools.check.cli import check as check_command
from henselkit.tools.series.cli import parse as parse_command
from henselkit.tools.series.cli import taylor as taylor_command
from henselkit.tools.solve.cli import hensel as hensel_command
from henselkit.tools.solve.cli import solve_algebra as solve_algebra_command
from henselkit.tools.solve.cli import solve_dh as solve_dh_command
from henselkit.tools.weil.cli import weil_check_bounds as weil_check_bounds_command
from henselkit.tools.weil.cli import weil_descend as weil_descend_command
from henselkit.tools.weil.cli import weil_tau as weil_tau_command


def _int_list(ctx: click.Context, param: click.Parameter, value: str | None) -> list[int] | None:
    if value is None:
        return None
    try:
        return [int(part) for part in value.split(",") if part.strip()]
    except ValueError as err:
        raise click.BadParameter(f"expected comma-separated integers, got '{value}'") from err


@click.group()
@click.version_option(version=__version__, prog_name="henselkit")
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False),
    help="YAML/JSON run configuration (falls back to $HENSELKIT_CONFIG)",
)
@click.option(
    "--precision", callback=_int_list, help="Terms kept per tower level, e.g. '16' or '12,8'"
)
@click.option("--ramification", callback=_int_list, help="Ramification d_i per level, e.g. '1,2'")
@click.option("--seed", type=int, help="Seed for randomized suites")
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["json", "pretty"], case_sensitive=False),
    help="Result format (default: json)",
)
@click.pass_context
@reports_errors
def henselkit(ctx, config_path, precision, ramification, seed, output_format):
    """
    henselkit - differentially henselian fields at desk scale

    Works in the tower Q ⊂ Q((t0)) ⊂ Q((t0))((t1)) ⊂ ... of truncated series.

    \b
    Expression grammar:
      series     1 + t0 - (1/2)*t0^2 + t0^(3/2) + O(t0^4)
      variables  x1, x1', x1'' and x1^(k) for the k-th derivative
      powers     x1^3 is a power, x1^(3) is a derivative
      labels     basis labels of an extension (weil commands)

    \b
    Examples:
      henselkit parse "x1^(2) + x1''"
      henselkit solve-dh --poly "x1' - x1" --jet "1,1" --gamma 5 --terms 8
      henselkit hensel --system "x2^2 - 1 - x1" --fixed t0 --approx 1 --target 8
      henselkit weil-descend --algebra circle.yml --extension gaussian
      henselkit check all --seed 42
    """
    setup_logging()
    ctx.obj = resolve_config(
        config_path,
        precision=precision,
        ramification=ramification,
        seed=seed,
        output_format=output_format.lower() if output_format else None,
    )


henselkit.add_command(parse_command, name="parse")
henselkit.add_command(taylor_command, name="taylor")
henselkit.add_command(solve_dh_command, name="solve-dh")
henselkit.add_command(hensel_command, name="hensel")
henselkit.add_command(solve_algebra_command, name="solve-algebra")
henselkit.add_command(weil_descend_command, name="weil-descend")
henselkit.add_command(weil_tau_command, name="weil-tau")
henselkit.add_command(weil_check_bounds_command, name="weil-check-bounds")
henselkit.add_command(check_command, name="check")


def main():
    henselkit()


if __name__ == "__main__":
    main()
