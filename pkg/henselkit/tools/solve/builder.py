"""Turn command-line text into problems over the configured tower."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence
from typing import TypeVar

from henselkit.diffpoly.poly import DiffPoly
from henselkit.expr.evaluate import parse_diffpoly, parse_jet, split_top_level
from henselkit.expr.grammar import max_series_index, parse_expression
from henselkit.lib.config import RunConfig
from henselkit.lib.errors import (
    DegeneratePoint,
    InsufficientPrecision,
    MalformedJet,
    PrecisionExhausted,
)
from henselkit.series.tower import Coefficient, TowerDescriptor
from henselkit.series.values import parse_value
from henselkit.solver.dh import DHProblem

_LOG = logging.getLogger(__name__)

T = TypeVar("T")


def height_of(texts: Iterable[str]) -> int:
    """Smallest tower height in which every ``t<i>`` of the texts exists."""
    height = 0
    for text in texts:
        for part in split_top_level(text):
            height = max(height, max_series_index(parse_expression(part)) + 1)
    return height


def stage_for(config: RunConfig, texts: Iterable[str], minimum: int = 0) -> TowerDescriptor:
    return config.tower(max(height_of(texts), minimum))


def build_problem(config: RunConfig, poly: str, jet: str, gamma: str) -> DHProblem:
    """(f, c, γ) over the lowest stage holding the series in f and c and the coordinates of γ."""
    radius = parse_value(gamma)
    tower_field = stage_for(config, [poly, jet], minimum=radius.length)
    f = parse_diffpoly(poly, tower_field, num_vars=1)
    c = tuple(parse_jet(jet, tower_field))
    check_jet_length(f, c)
    return DHProblem(f, c, radius)


def check_jet_length(f: DiffPoly, jet: Sequence[Coefficient]) -> None:
    """A user jet for f of order n must list exactly c_0, ..., c_n."""
    if f.involves(0) and len(jet) != f.order(0) + 1:
        n = f.order(0)
        raise MalformedJet(
            f"f has order {n} in x1, so the jet needs {n + 1} entries, got {len(jet)}"
        )


def parse_system(system: str, tower_field: TowerDescriptor, num_vars: int) -> list[DiffPoly]:
    """Polynomials separated by ';'."""
    parts = [p.strip() for p in system.split(";") if p.strip()]
    return [parse_diffpoly(p, tower_field, num_vars) for p in parts]


def with_retry(config: RunConfig, run: Callable[[RunConfig, int], T]) -> T:
    """Run at scale 1; if enabled, retry at scale 2 (doubled precision and terms)."""
    try:
        return run(config, 1)
    except (DegeneratePoint, PrecisionExhausted, InsufficientPrecision) as err:
        retryable = not isinstance(err, DegeneratePoint) or err.indistinguishable
        if not (config.retry_precision and retryable):
            raise
        _LOG.warning("%s; retrying with doubled precision", err.describe())
        return run(config.doubled(), 2)
