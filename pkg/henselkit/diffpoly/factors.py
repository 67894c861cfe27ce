"""Picking the factor of f that carries a non-degenerate algebraic point."""

from __future__ import annotations

import logging
from collections.abc import Sequence

from henselkit.diffpoly.poly import DiffPoly, Jet, product
from henselkit.lib.errors import (
    ComputationError,
    MultipleVanishingFactors,
    NoVanishingFactor,
)
from henselkit.series.tower import vanishes

_LOG = logging.getLogger(__name__)


def vanishing_factors(factors: Sequence[DiffPoly], jet: Jet) -> list[int]:
    """Indices of every factor whose f_alg vanishes at ``jet`` (to known precision)."""
    return [idx for idx, g in enumerate(factors) if vanishes(g.alg_eval(jet))]


def select_vanishing_factor(factors: Sequence[DiffPoly], jet: Jet, index: int = 0) -> int:
    """Index of the unique factor g with g_alg(jet) = 0.

    Also confirms that g has the same order in x_index as the product and that its separant does
    not vanish at ``jet``; a failure there means the inputs were not a factorisation at a
    non-degenerate point.
    """
    hits = vanishing_factors(factors, jet)
    if not hits:
        raise NoVanishingFactor("no factor vanishes at the given jet")
    if len(hits) > 1:
        raise MultipleVanishingFactors(
            f"factors {', '.join(str(h) for h in hits)} all vanish at the given jet"
        )
    chosen = hits[0]
    g = factors[chosen]
    f = product(list(factors))
    if g.order(index) != f.order(index):
        raise ComputationError(
            f"factor {chosen} has order {g.order(index)}, the product has order {f.order(index)}"
        )
    if vanishes(g.separant(index).alg_eval(jet)):
        raise ComputationError(f"separant of factor {chosen} vanishes at the given jet")
    _LOG.debug("factor %d selected among %d", chosen, len(factors))
    return chosen
