"""Differential points of triangular presentations via the twisted Taylor morphism.

Each relation has a leader, the highest generator it involves, and each generator leads at
most one relation. A led generator is prolonged from its relation; a free generator x takes
φ(x') = 1 (unless given) and zero beyond, so its image is a genuine perturbation of the base
value.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from henselkit.diffpoly.poly import DiffPoly
from henselkit.lib.errors import (
    DegeneratePoint,
    IndistinguishableFromZero,
    InputError,
    InsufficientPrecision,
    JetTooShort,
    NonTriangularPresentation,
    NotARoot,
    UndecidedAtPrecision,
)
from henselkit.series.codec import format_series, series_to_json
from henselkit.series.tower import (
    Coefficient,
    TowerDescriptor,
    TowerElement,
    common_field,
    embed,
    higher_field,
    in_open_ball,
    is_exact,
    vanishes,
    zero,
)
from henselkit.series.values import ValueVec
from henselkit.taylor.morphism import next_stage, taylor_series

_LOG = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlgebraPresentation:
    """Generators x1..xm, differential relations, optional base point (jets per generator)."""

    generators: tuple[str, ...]
    relations: tuple[DiffPoly, ...] = ()
    base_point: Mapping[str, Sequence[Coefficient]] | None = None

    def __post_init__(self) -> None:
        expected = tuple(f"x{i + 1}" for i in range(len(self.generators)))
        if self.generators != expected:
            raise InputError(f"generators must be named {', '.join(expected)} in order")

    @property
    def field(self) -> TowerDescriptor:
        fields = [r.field for r in self.relations]
        if self.base_point:
            fields.append(common_field([v for jet in self.base_point.values() for v in jet]))
        return higher_field(*fields)

    def leaders(self) -> dict[int, DiffPoly]:
        """Map generator index -> the relation it leads."""
        out: dict[int, DiffPoly] = {}
        for relation in self.relations:
            involved = {v[0] for v in relation.variables()}
            if not involved:
                if vanishes(relation.constant_term()):
                    continue
                raise NotARoot(f"relation {relation} is a nonzero constant")
            leader = max(involved)
            if leader >= len(self.generators):
                raise NonTriangularPresentation(f"relation {relation} uses an undeclared generator")
            if leader in out:
                raise NonTriangularPresentation(
                    f"{self.generators[leader]} leads both {out[leader]} and {relation}"
                )
            out[leader] = relation
        return out


class _Prolongation:
    """Lazily computed φ(x_i^(j)) for every generator."""

    def __init__(self, presentation: AlgebraPresentation, tower_field: TowerDescriptor):
        if not presentation.base_point:
            raise InputError("a base point is required")
        self.field = tower_field
        self.leaders = presentation.leaders()
        self.values: list[list[Coefficient]] = []
        self.derived: dict[int, DiffPoly] = {}
        self.separants: dict[int, Coefficient] = {}
        for i, name in enumerate(presentation.generators):
            jet = presentation.base_point.get(name)
            if not jet:
                raise JetTooShort(f"base point has no value for {name}")
            self.values.append([embed(v, tower_field) for v in jet])
        for i, relation in sorted(self.leaders.items()):
            self._start(i, relation)

    def _start(self, i: int, relation: DiffPoly) -> None:
        n = relation.order(i)
        if len(self.values[i]) < n + 1:
            raise JetTooShort(f"x{i + 1} needs a base jet of length {n + 1}")
        del self.values[i][n + 1 :]
        jet = self._jet(relation, i, include_leader=True)
        if not vanishes(relation.alg_eval(jet)):
            raise NotARoot(f"base point does not kill {relation}")
        separant = relation.partial(i, n).alg_eval(jet)
        if vanishes(separant):
            indistinguishable = not is_exact(separant)
            raise DegeneratePoint(
                f"separant of {relation} vanishes at the base point",
                indistinguishable=indistinguishable,
            )
        self.separants[i] = separant
        self.derived[i] = relation

    def _jet(self, poly: DiffPoly, leader: int, include_leader: bool) -> list[list[Coefficient]]:
        depth: dict[int, int] = {}
        for index, order in poly.variables():
            depth[index] = max(depth.get(index, 0), order)
        jet: list[list[Coefficient]] = [[] for _ in range(leader + 1)]
        for index, order in depth.items():
            if index == leader:
                known = self.values[leader]
                jet[index] = known if include_leader else [*known, zero(self.field)]
            else:
                jet[index] = self.ensure(index, order)
        return jet

    def ensure(self, i: int, depth: int) -> list[Coefficient]:
        values = self.values[i]
        while len(values) <= depth:
            if i not in self.leaders:
                values.append(embed(1 if len(values) == 1 else 0, self.field))
                continue
            g = self.derived[i].derive()
            self.derived[i] = g
            rest = g.alg_eval(self._jet(g, i, include_leader=False))
            values.append(embed(-rest / self.separants[i], self.field))
        return values


@dataclass(frozen=True)
class AlgebraPoint:
    images: dict[str, TowerElement]
    base: dict[str, Coefficient]
    ball_check: bool
    residuals: tuple[Coefficient, ...]


def solve_algebra_point(
    presentation: AlgebraPresentation,
    gamma: ValueVec,
    terms: int,
    target: TowerDescriptor | None = None,
) -> AlgebraPoint:
    """A differential point of the presented algebra, valued in the next tower stage."""
    base_field = presentation.field if target is None else target.below()
    leaders = presentation.leaders()
    top = max((r.order(i) for i, r in leaders.items()), default=0)
    if terms <= top:
        raise InsufficientPrecision(f"{terms} terms cannot certify relations of order {top}")
    state = _Prolongation(presentation, base_field)
    stage = next_stage(base_field, target)
    images: dict[str, TowerElement] = {}
    for i, name in enumerate(presentation.generators):
        values = state.ensure(i, terms - 1)
        images[name] = taylor_series(values[:terms], terms, stage)
        _LOG.debug("image of %s: %s", name, format_series(images[name]))
    ordered = [images[name] for name in presentation.generators]
    residuals = tuple(r.embed(stage).diff_eval(ordered) for r in presentation.relations)
    base = {name: state.values[i][0] for i, name in enumerate(presentation.generators)}
    try:
        ball = all(vanishes(r) for r in residuals) and in_open_ball(
            ordered, [base[name] for name in presentation.generators], gamma
        )
    except IndistinguishableFromZero as err:
        raise UndecidedAtPrecision(err.message) from err
    return AlgebraPoint(images, base, ball, residuals)


def certify_algebra_point(point: AlgebraPoint) -> dict[str, Any]:
    return {
        "solution": {name: series_to_json(b) for name, b in point.images.items()},
        "solutionText": {name: format_series(b) for name, b in point.images.items()},
        "residuals": [format_series(r) for r in point.residuals],
        "ballCheck": point.ball_check,
    }
