"""Extensions shipped with henselkit."""

from __future__ import annotations

from fractions import Fraction

from henselkit.series.tower import DEFAULT_PRECISION, TowerDescriptor, generator, one, zero
from henselkit.series.values import ValueVec
from henselkit.weil.algebra import FiniteFreeAlgebra, ValuedBasis


def gaussian_rationals() -> FiniteFreeAlgebra:
    """Q(i)/Q with the trivial valuation and ∂ = 0."""
    base = TowerDescriptor()
    basis = ValuedBasis(("one", "i"), (ValueVec(), ValueVec()), base, separated=True)
    q = Fraction
    structure = (
        ((q(1), q(0)), (q(0), q(1))),
        ((q(0), q(1)), (q(-1), q(0))),
    )
    derivation = ((q(0), q(0)), (q(0), q(0)))
    return FiniteFreeAlgebra(basis, structure, derivation, (q(1), q(0)), name="Q(i)")


def ramified_quadratic(precision: int = DEFAULT_PRECISION) -> FiniteFreeAlgebra:
    """Q((t^(1/2)))/Q((t)) on the basis (1, s) with s² = t and ∂s = s/(2t)."""
    base = TowerDescriptor((1,), (precision,))
    fine = TowerDescriptor((2,), (precision,))
    t = generator(base, 0)
    nil = zero(base)
    realization = (one(fine), generator(fine, 0, Fraction(1, 2)))
    basis = ValuedBasis(
        ("one", "s"),
        (ValueVec.of(0), ValueVec.of(Fraction(1, 2))),
        base,
        realization=realization,
        separated=True,
    )
    unit = one(base)
    structure = (
        ((unit, nil), (nil, unit)),
        ((nil, unit), (t, nil)),
    )
    derivation = ((nil, nil), (nil, generator(base, 0, -1) * Fraction(1, 2)))
    return FiniteFreeAlgebra(basis, structure, derivation, (unit, nil), name="Q((t^(1/2)))")


def linear_span_basis(precision: int = DEFAULT_PRECISION) -> ValuedBasis:
    """The Q-span of 1 and 1 + t inside Q((t)); not separated."""
    fine = TowerDescriptor((1,), (precision,))
    realization = (one(fine), one(fine) + generator(fine, 0))
    return ValuedBasis(
        ("one", "u"), (ValueVec.of(0), ValueVec.of(0)), TowerDescriptor(), realization
    )
