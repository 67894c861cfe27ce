"""Newton lifting of simple roots of polynomial systems over a series stage."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from henselkit.diffpoly.poly import DiffPoly
from henselkit.lib.errors import DominanceFailure, PrecisionExhausted
from henselkit.series.tower import (
    Coefficient,
    TowerDescriptor,
    TowerElement,
    common_field,
    embed,
    higher_field,
    is_exact_zero,
)
from henselkit.solver.linalg import determinant, solve

_LOG = logging.getLogger(__name__)

MAX_ITERATIONS = 64


@dataclass(frozen=True)
class HenselLift:
    """Result of ``hensel_lift_system``.

    ``residual_order`` is a lower bound for the top exponent of F(fixed, values), ``None`` when
    the residual is exactly zero; ``closeness`` bounds the top exponent of values - approx from
    below (strictly).
    """

    values: tuple[Coefficient, ...]
    iterations: int
    residual_order: Fraction | None
    closeness: Fraction | None


def top_order(x: Coefficient) -> Fraction | None:
    """Exponent of the first known term in the outermost variable; ``None`` for exact zero.

    An element with no known terms reports its precision, which is a lower bound.
    """
    if isinstance(x, TowerElement):
        if x.terms:
            return x.terms[0][0]
        return x.prec
    return None if x == 0 else Fraction(0)


def _min_order(values: Sequence[Coefficient]) -> Fraction | None:
    orders = [o for o in (top_order(v) for v in values) if o is not None]
    return min(orders) if orders else None


def _settled(residual: Sequence[Coefficient], target: Fraction) -> bool:
    for r in residual:
        if is_exact_zero(r):
            continue
        order = top_order(r)
        assert order is not None
        if order < target:
            return False
    return True


def _evaluate(system: Sequence[DiffPoly], point: Sequence[Coefficient]) -> list[Coefficient]:
    jet = [[value] for value in point]
    return [f.alg_eval(jet) for f in system]


def jacobian(
    system: Sequence[DiffPoly], point: Sequence[Coefficient], lifted: Sequence[int]
) -> list[list[Coefficient]]:
    """∂F_i/∂x_j at ``point`` for the lifted variable indices ``j``."""
    jet = [[value] for value in point]
    return [[f.partial(j, 0).alg_eval(jet) for j in lifted] for f in system]


def hensel_lift_system(
    system: Sequence[DiffPoly],
    fixed: Sequence[Coefficient],
    approx: Sequence[Coefficient],
    target_prec: Fraction | int,
) -> HenselLift:
    """Lift ``approx`` to d with F(fixed, d) = O(t^target_prec).

    The variables of every F_i are x1..xk for ``fixed`` followed by the lifted ones. The
    starting point must satisfy v(F) > 2·v(det J) in the outermost variable. Each Newton step
    replaces d by its exact part below min(target + e, 2ρ - e), where ρ is the residual order
    and e the order of det J.
    """
    target_prec = Fraction(target_prec)
    if len(system) != len(approx):
        raise DominanceFailure(
            f"{len(system)} equations for {len(approx)} unknowns; the system must be square"
        )
    field: TowerDescriptor = higher_field(
        common_field([*fixed, *approx]), *(f.field for f in system)
    )
    base = [embed(v, field) for v in fixed]
    lifted = [len(fixed) + k for k in range(len(approx))]
    d = [embed(v, field) for v in approx]
    start_order: Fraction | None = None
    start_det: Fraction | None = None
    for iteration in range(MAX_ITERATIONS + 1):
        jac = jacobian(system, [*base, *d], lifted)
        det_order = top_order(determinant(jac)) or Fraction(0)
        residual = _evaluate(system, [*base, *d])
        rho = _min_order(residual)
        if iteration == 0:
            start_order, start_det = rho, det_order
            if rho is not None and not rho > 2 * det_order:
                raise DominanceFailure(
                    f"residual order {rho} does not exceed twice the Jacobian order {det_order}"
                )
        _LOG.debug(
            "newton step %d: residual order %s, det order %s",
            iteration,
            rho,
            det_order,
            extra={"iteration": iteration},
        )
        if all(is_exact_zero(r) for r in residual):
            return _finish(d, None, iteration, start_order, start_det, exact=True)
        if _settled(residual, target_prec):
            return _finish(
                [x.truncate(target_prec) if isinstance(x, TowerElement) else x for x in d],
                rho,
                iteration,
                start_order,
                start_det,
                exact=False,
            )
        if iteration == MAX_ITERATIONS:
            break
        assert rho is not None
        step = solve(jac, residual)
        cap = min(target_prec + det_order, 2 * rho - det_order)
        updated = []
        for x, dx in zip(d, step):
            new = embed(x - dx, field)
            updated.append(new.approximant(cap) if isinstance(new, TowerElement) else new)
        if updated == d:
            break
        d = updated
    raise PrecisionExhausted(
        f"residual did not reach order {target_prec} after {MAX_ITERATIONS} Newton steps"
    )


def _finish(
    values: Sequence[Coefficient],
    residual_order: Fraction | None,
    iterations: int,
    start_order: Fraction | None,
    start_det: Fraction | None,
    exact: bool,
) -> HenselLift:
    closeness = None
    if start_order is not None and start_det is not None:
        closeness = start_order - start_det
    _LOG.info(
        "hensel lift finished after %d steps (%s)", iterations, "exact" if exact else "truncated"
    )
    return HenselLift(tuple(values), iterations, residual_order, closeness)
