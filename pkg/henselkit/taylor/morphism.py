"""The standard twisted Taylor morphism into the next tower stage.

For a sequence a_j = φ(x^(j)) the image of x is Σ α_i t^i with

    α_i = (1/i!) Σ_{j<=i} (-1)^(i-j) C(i, j) ∂^(i-j)(a_j)

where ∂ is the derivation of the coefficient field. The constant term of the n-th derivative of
the image is a_n, and the image moves a_0 by something of strictly positive t-valuation.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction
from math import comb, factorial

from henselkit.diffpoly.poly import DiffPoly
from henselkit.lib.errors import InsufficientJet, LevelMismatch
from henselkit.series.tower import (
    Coefficient,
    TowerDescriptor,
    TowerElement,
    build_element,
    common_field,
    derive,
    embed,
    top_order_positive,
    zero,
)
from henselkit.taylor.prolong import ProlongedPoint, extend

_LOG = logging.getLogger(__name__)


def next_stage(
    tower_field: TowerDescriptor, target: TowerDescriptor | None = None
) -> TowerDescriptor:
    """``target`` when given (it must sit one level above), else the default extension."""
    if target is None:
        return tower_field.extend()
    if target.height != tower_field.height + 1 or not target.contains(tower_field):
        raise LevelMismatch(f"{target} is not an extension of {tower_field} by one variable")
    return target


def taylor_series(
    values: Sequence[Coefficient], terms: int, target: TowerDescriptor | None = None
) -> TowerElement:
    """Σ_{i<terms} α_i t^i + O(t^terms) from the value sequence a_0, a_1, ..."""
    if terms < 1:
        raise InsufficientJet("at least one Taylor coefficient is required")
    if len(values) < terms:
        raise InsufficientJet(
            f"{terms} coefficients need {terms} prolonged values, only {len(values)} known"
        )
    base = target.below() if target is not None else common_field(values)
    stage = next_stage(base, target)
    # derivatives[j][k] = ∂^k(a_j)
    derivatives: list[list[Coefficient]] = []
    for j in range(terms):
        row = [embed(values[j], base)]
        for _ in range(terms - 1 - j):
            row.append(derive(row[-1]))
        derivatives.append(row)
    coefficients: dict[Fraction, Coefficient] = {}
    for i in range(terms):
        total: Coefficient = zero(base)
        for j in range(i + 1):
            sign = -1 if (i - j) % 2 else 1
            total = total + derivatives[j][i - j] * (sign * comb(i, j))
        coefficients[Fraction(i)] = total * Fraction(1, factorial(i))
    return build_element(stage, coefficients, Fraction(terms))


def twisted_taylor(
    point: ProlongedPoint, terms: int, target: TowerDescriptor | None = None
) -> TowerElement:
    """T*(x) to ``terms`` coefficients, in the stage above the point."""
    alpha = taylor_series(point.values, terms, target)
    _LOG.debug("twisted Taylor image with %d terms at stage %d", terms, alpha.level)
    return alpha


def check_valued_taylor(point: ProlongedPoint, alpha: TowerElement) -> bool:
    """True iff α - φ(x) has strictly positive valuation in the new variable."""
    return top_order_positive(alpha - point.values[0])


def apply_morphism(
    point: ProlongedPoint, p: DiffPoly, terms: int, target: TowerDescriptor | None = None
) -> TowerElement:
    """T*(p) for any p in K{x}, through the prolonged values φ(p), φ(δp), ..."""
    need = (p.order(point.index) if p.involves(point.index) else 0) + terms - 1
    point = extend(point, need)
    values = []
    q = p
    for _ in range(terms):
        values.append(q.alg_eval([[] for _ in range(point.index)] + [list(point.values)]))
        q = q.derive()
    base = common_field([*values, *point.values])
    return taylor_series([embed(v, base) for v in values], terms, target)
