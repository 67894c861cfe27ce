"""Differentially henselian problems (f, c, γ) and their certified solutions.

A solution is produced one tower stage up: the twisted Taylor image of the prolonged point.
Its jet differs from c by elements of strictly positive valuation in the new variable, which
beats every value of the old group.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from henselkit.diffpoly.poly import DiffPoly, jet_of
from henselkit.lib.errors import (
    IndistinguishableFromZero,
    InsufficientPrecision,
    UndecidedAtPrecision,
)
from henselkit.series.codec import format_series, series_to_json
from henselkit.series.tower import (
    DEFAULT_PRECISION,
    DEFAULT_RAMIFICATION,
    Coefficient,
    TowerDescriptor,
    TowerElement,
    embed,
    field_of,
    higher_field,
    in_open_ball,
    is_exact_zero,
    is_settled,
    valuation,
    valuation_bound,
    vanishes,
)
from henselkit.series.values import ValueVec, min_value
from henselkit.taylor.morphism import twisted_taylor
from henselkit.taylor.prolong import check_point, prolong

_LOG = logging.getLogger(__name__)


@dataclass(frozen=True)
class DHProblem:
    """Find b with f(b) = 0 and Jet_n(b) in the open ball of radius γ around ``jet``."""

    poly: DiffPoly
    jet: tuple[Coefficient, ...]
    gamma: ValueVec

    @property
    def order(self) -> int:
        return self.poly.order()

    @property
    def field(self) -> TowerDescriptor:
        return higher_field(self.poly.field, *(field_of(c) for c in self.jet))

    def validate(self) -> None:
        """Raise NotARoot or DegeneratePoint unless the jet is a non-degenerate root."""
        check_point(self.poly, self.jet)


def tower_extend(
    desc: TowerDescriptor,
    ramification: int = DEFAULT_RAMIFICATION,
    precision: int = DEFAULT_PRECISION,
) -> TowerDescriptor:
    """K_k -> K_{k+1}; elements of K_k embed unchanged as constants."""
    return desc.extend(ramification, precision)


def solve_dh(
    problem: DHProblem, terms: int, target: TowerDescriptor | None = None
) -> TowerElement:
    """T*(x) for the prolonged point, to ``terms`` coefficients, in the next stage."""
    n = problem.order
    if terms <= n:
        raise InsufficientPrecision(
            f"{terms} terms leave nothing of f(b) to check for an order-{n} polynomial"
        )
    point = prolong(problem.poly, problem.jet, max(terms - 1, n))
    alpha = twisted_taylor(point, terms, target)
    _LOG.info(
        "solved order-%d problem at stage %d with %d terms",
        n,
        alpha.level,
        terms,
        extra={"stage": alpha.level},
    )
    return alpha


def solution_jet(problem: DHProblem, b: Coefficient) -> tuple[Coefficient, ...]:
    return jet_of(b, problem.order)


def closeness(problem: DHProblem, b: Coefficient) -> ValueVec:
    """min_i v(b^(i) - c_i), a lower bound when some difference is unresolved."""
    diffs = [x - c for x, c in zip(solution_jet(problem, b), problem.jet)]
    return min_value([valuation_bound(d) for d in diffs])


def check_dl(problem: DHProblem, b: Coefficient) -> bool:
    """f(b) = 0 to available precision and Jet_n(b) lies in B_γ(c)."""
    residual = problem.poly.diff_eval(b)
    if not vanishes(residual):
        return False
    try:
        return in_open_ball(solution_jet(problem, b), problem.jet, problem.gamma)
    except IndistinguishableFromZero as err:
        raise UndecidedAtPrecision(err.message) from err


def residual_bound(residual: Coefficient) -> str:
    if not is_settled(residual) and not is_exact_zero(residual):
        return f">= {valuation_bound(residual)}"
    return str(valuation(residual))


def certify(problem: DHProblem, b: Coefficient) -> dict[str, Any]:
    """JSON certificate for a claimed solution."""
    residual = problem.poly.diff_eval(b)
    ball = check_dl(problem, b)
    return {
        "solution": series_to_json(b),
        "solutionText": format_series(b),
        "stage": field_of(b).height,
        "residual": format_series(residual),
        "residualValuation": residual_bound(residual),
        "closeness": str(closeness(problem, b)),
        "gamma": str(problem.gamma),
        "ballCheck": ball,
    }


def iterate_stages(
    problem: DHProblem, terms: int, stages: Sequence[TowerDescriptor]
) -> list[tuple[DHProblem, TowerElement]]:
    """Solve, re-pose the problem at the solution's stage and solve again, once per stage."""
    out = []
    current = problem
    for stage in stages:
        b = solve_dh(current, terms, stage)
        out.append((current, b))
        lifted_jet = tuple(embed(c, stage) for c in current.jet)
        current = DHProblem(current.poly.embed(stage), lifted_jet, current.gamma)
    return out
