"""CLI interface for the property suites."""

from __future__ import annotations

import sys

import click

from henselkit.lib.config import RunConfig
from henselkit.lib.output import emit, reports_errors

from .suites import SUITES, run_suites


@click.command()
@click.argument("suite", type=click.Choice([*SUITES, "all"], case_sensitive=False))
@click.option("--seed", type=int, help="Seed for this run (overrides the global --seed)")
@click.option("--trials", type=click.IntRange(min=1), help="Override every trial count")
@click.pass_obj
@reports_errors
def check(config: RunConfig, suite, seed, trials):
    """
    Run a seeded property suite; exit 1 when any trial fails.

    \b
    Suites:
      series    Leibniz rule, valuation laws, angular component
      diffpoly  δ is a ring derivation; δf is linear in x^(n+1)
      taylor    constant terms, valued Taylor property, f(T*(x)) = 0
      solver    exponential law, √(1 + t), iterated tower, ball checks
      weil      descent of x² + 1, τ on a grid, valuation bounds
      parser    print then parse is the identity
      all       every suite above

    \b
    Examples:
      henselkit check all --seed 42
      henselkit --precision 12 check taylor --trials 10
    """
    updates: dict = {}
    if seed is not None:
        updates["seed"] = seed
    if trials is not None:
        counts = config.trials.model_copy(
            update={name: trials for name in type(config.trials).model_fields}
        )
        updates["trials"] = counts
    if updates:
        config = config.model_copy(update=updates)
    names = list(SUITES) if suite.lower() == "all" else [suite.lower()]
    report = run_suites(names, config)
    emit(report, config.output_format, title=f"check {suite}")
    if not report["ok"]:
        sys.exit(1)
