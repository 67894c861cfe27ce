"""henselkit: computer algebra for differentially henselian fields."""

__version__ = "0.3.0"

from henselkit.diffpoly import DiffPoly, jet_of
from henselkit.expr import parse_diffpoly, parse_jet, parse_series
from henselkit.series import TowerDescriptor, TowerElement, ValueVec, parse_value
from henselkit.solver import (
    AlgebraPresentation,
    DHProblem,
    certify,
    hensel_lift_system,
    solve_algebra_point,
    solve_dh,
)
from henselkit.taylor import prolong, twisted_taylor
from henselkit.weil import descend, gaussian_rationals, ramified_quadratic, tau, tau_inverse

__all__ = [
    "AlgebraPresentation",
    "DHProblem",
    "DiffPoly",
    "TowerDescriptor",
    "TowerElement",
    "ValueVec",
    "certify",
    "descend",
    "gaussian_rationals",
    "hensel_lift_system",
    "jet_of",
    "parse_diffpoly",
    "parse_jet",
    "parse_series",
    "parse_value",
    "prolong",
    "ramified_quadratic",
    "solve_algebra_point",
    "solve_dh",
    "tau",
    "tau_inverse",
    "twisted_taylor",
]
