"""Weil descent along finite free valued extensions."""

from henselkit.weil.algebra import AlgebraElement, FiniteFreeAlgebra, ValuedBasis
from henselkit.weil.bounds import continuity_bound, is_separated_sample, separated_lower_bound
from henselkit.weil.descent import (
    DescendedPresentation,
    ExtensionPresentation,
    apply_descent_derivation,
    coordinates,
    descend,
    descent_derivation,
    descent_derivation_table,
    tau,
    tau_inverse,
)
from henselkit.weil.extensions import gaussian_rationals, linear_span_basis, ramified_quadratic

__all__ = [
    "AlgebraElement",
    "DescendedPresentation",
    "ExtensionPresentation",
    "FiniteFreeAlgebra",
    "ValuedBasis",
    "apply_descent_derivation",
    "continuity_bound",
    "coordinates",
    "descend",
    "descent_derivation",
    "descent_derivation_table",
    "gaussian_rationals",
    "is_separated_sample",
    "linear_span_basis",
    "ramified_quadratic",
    "separated_lower_bound",
    "tau",
    "tau_inverse",
]
