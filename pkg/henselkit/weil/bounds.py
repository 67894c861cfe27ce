"""Valuation bounds between K-points of W(B) and the L-points they correspond to."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from henselkit.lib.errors import (
    BasisNotDeclaredSeparated,
    IndistinguishableFromZero,
    TheoremViolation,
)
from henselkit.series.tower import Coefficient, exceeds, valuation, valuation_bound
from henselkit.series.values import ValueVec, min_value
from henselkit.weil.algebra import FiniteFreeAlgebra, ValuedBasis

_LOG = logging.getLogger(__name__)


def _basis(source: FiniteFreeAlgebra | ValuedBasis) -> ValuedBasis:
    return source.basis if isinstance(source, FiniteFreeAlgebra) else source


@dataclass(frozen=True)
class ContinuityWitness:
    epsilon: ValueVec
    threshold: ValueVec
    hypothesis: bool
    difference: ValueVec
    conclusion: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "epsilon": str(self.epsilon),
            "threshold": str(self.threshold),
            "hypothesis": self.hypothesis,
            "difference": str(self.difference),
            "conclusion": self.conclusion,
        }


def continuity_bound(
    source: FiniteFreeAlgebra | ValuedBasis,
    phi: Sequence[Coefficient],
    psi: Sequence[Coefficient],
    gamma: ValueVec,
) -> ContinuityWitness:
    """If v(φ̃(a(i)) - ψ̃(a(i))) > γ - ε for all i then w(φ(a) - ψ(a)) > γ.

    When w(φ(a) - ψ(a)) is lost in the remainders, the ultrametric bound
    min_i v(d_i) + w(b_i) is used instead and ``difference`` reports that bound.
    Raises TheoremViolation when the hypothesis holds and the conclusion does not.
    """
    basis = _basis(source)
    epsilon = basis.epsilon
    threshold = gamma - epsilon
    diffs = [a - b for a, b in zip(phi, psi)]
    hypothesis = all(exceeds(d, threshold) for d in diffs)
    try:
        difference = basis.value(diffs)
        conclusion = difference > gamma
    except IndistinguishableFromZero:
        difference = min_value([valuation_bound(d) + w for d, w in zip(diffs, basis.valuations)])
        conclusion = all(exceeds(d, gamma - w) for d, w in zip(diffs, basis.valuations))
        _LOG.info("w(φ(a) - ψ(a)) unresolved, ultrametric bound %s", difference)
    if hypothesis and not conclusion:
        raise TheoremViolation(
            f"coordinates differ by more than {threshold} but w(φ(a) - ψ(a)) = {difference} "
            f"does not exceed {gamma}"
        )
    return ContinuityWitness(epsilon, threshold, hypothesis, difference, conclusion)


@dataclass(frozen=True)
class SeparatedWitness:
    difference: ValueVec
    coordinates: tuple[ValueVec, ...]
    bounds: tuple[ValueVec, ...]

    @property
    def holds(self) -> bool:
        return all(v >= b for v, b in zip(self.coordinates, self.bounds))

    def to_json(self) -> dict[str, Any]:
        return {
            "difference": str(self.difference),
            "coordinates": [str(v) for v in self.coordinates],
            "bounds": [str(b) for b in self.bounds],
            "holds": self.holds,
        }


def separated_lower_bound(
    source: FiniteFreeAlgebra | ValuedBasis,
    phi: Sequence[Coefficient],
    psi: Sequence[Coefficient],
) -> SeparatedWitness:
    """w(φ̃(a(j)) - ψ̃(a(j))) >= w(φ(a) - ψ(a)) - w(b_j) for every j, on a separated basis."""
    basis = _basis(source)
    if not basis.separated:
        raise BasisNotDeclaredSeparated(
            f"basis ({', '.join(basis.labels)}) is not declared separated"
        )
    diffs = [a - b for a, b in zip(phi, psi)]
    difference = basis.value(diffs)
    coords = tuple(valuation(d) for d in diffs)
    if difference.infinite:
        bounds = tuple(ValueVec.infinity() for _ in diffs)
    else:
        bounds = tuple(difference - w for w in basis.valuations)
    witness = SeparatedWitness(difference, coords, bounds)
    if not witness.holds:
        raise TheoremViolation(
            f"coordinate valuations {[str(v) for v in coords]} fall below "
            f"{[str(b) for b in bounds]}"
        )
    return witness


def is_separated_sample(
    source: FiniteFreeAlgebra | ValuedBasis, samples: Sequence[Sequence[Coefficient]]
) -> bool:
    """w(Σ a_i b_i) = min_i w(a_i b_i) on every sample; a necessary check only.

    Without a series realization the declared flag is all there is to go on.
    """
    basis = _basis(source)
    if basis.realization is None:
        return basis.separated
    for sample in samples:
        terms = basis.term_values(sample)
        total = basis.value(sample)
        if total != min(terms):
            _LOG.info("sample %s breaks separatedness: %s vs %s", sample, total, min(terms))
            return False
    return True
