"""Prolongation of a non-degenerate algebraic point of x ↦ f(x) = 0."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from henselkit.diffpoly.poly import DiffPoly
from henselkit.lib.errors import DegeneratePoint, JetTooShort, NotARoot
from henselkit.series.codec import format_series
from henselkit.series.tower import (
    Coefficient,
    TowerDescriptor,
    common_field,
    embed,
    higher_field,
    is_exact,
    vanishes,
    zero,
)

_LOG = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProlongedPoint:
    """Images φ(x^(offset)), φ(x^(offset+1)), ... of the generator of K{x}/I(f).

    For ``offset == 0`` the first ``order + 1`` values are the algebraic point and the rest are
    forced by differentiating f(x) = 0.
    """

    poly: DiffPoly
    values: tuple[Coefficient, ...]
    index: int = 0
    offset: int = 0

    @property
    def order(self) -> int:
        return self.poly.order(self.index)

    @property
    def field(self) -> TowerDescriptor:
        return common_field(self.values)

    @property
    def depth(self) -> int:
        """Largest M with φ(x^(offset+M)) known."""
        return len(self.values) - 1

    def jet(self, n: int | None = None) -> tuple[Coefficient, ...]:
        n = self.order if n is None else n
        return self.values[: n + 1]


def _jet_for(index: int, values: Sequence[Coefficient]) -> list[list[Coefficient]]:
    """Single-variable assignment placed at ``index``; other variables stay unassigned."""
    return [[] for _ in range(index)] + [list(values)]


def check_point(f: DiffPoly, jet: Sequence[Coefficient], index: int = 0) -> Coefficient:
    """Raise unless ``jet`` is a non-degenerate root of f_alg; return s(f)_alg(jet)."""
    n = f.order(index)
    if len(jet) < n + 1:
        raise JetTooShort(f"order {n} needs a jet of length {n + 1}, got {len(jet)}")
    residual = f.alg_eval(_jet_for(index, jet[: n + 1]))
    if not vanishes(residual):
        raise NotARoot(f"f_alg at the jet is {format_series(residual)}, not 0")
    separant = f.separant(index).alg_eval(_jet_for(index, jet[: n + 1]))
    if vanishes(separant):
        indistinguishable = not is_exact(separant)
        raise DegeneratePoint(
            "separant is indistinguishable from zero at the jet"
            if indistinguishable
            else "separant vanishes at the jet",
            indistinguishable=indistinguishable,
        )
    return separant


def prolong(
    f: DiffPoly, jet: Sequence[Coefficient], depth: int, index: int = 0
) -> ProlongedPoint:
    """Extend the algebraic point ``jet`` of f to φ(x), ..., φ(x^(depth)).

    The k-th derivative of f is linear in x^(n+k) with coefficient s(f), so each new value is
    minus the rest of that derivative, evaluated at the values so far, divided by s(f).
    """
    n = f.order(index)
    if depth < n:
        raise JetTooShort(f"prolongation depth {depth} is below the order {n}")
    separant = check_point(f, jet, index)
    target = higher_field(f.field, common_field(jet[: n + 1]))
    values: list[Coefficient] = [embed(v, target) for v in jet[: n + 1]]
    g = f
    for k in range(1, depth - n + 1):
        g = g.derive()
        rest = g.alg_eval(_jet_for(index, [*values, zero(target)]))
        values.append(embed(-rest / separant, target))
        _LOG.debug("prolonged x^(%d) = %s", n + k, format_series(values[-1]))
    return ProlongedPoint(f, tuple(values), index)


def extend(point: ProlongedPoint, depth: int) -> ProlongedPoint:
    """The same point prolonged at least to ``depth``."""
    if point.offset:
        raise ValueError("a shifted point cannot be prolonged further")
    if point.depth >= depth:
        return point
    return prolong(point.poly, point.values[: point.order + 1], depth, point.index)


def shift(point: ProlongedPoint) -> ProlongedPoint:
    """values[j] -> values[j + 1]: the images of x', x'', ..."""
    return ProlongedPoint(point.poly, point.values[1:], point.index, point.offset + 1)
