"""Differential polynomials over a tower stage."""

from henselkit.diffpoly.factors import select_vanishing_factor, vanishing_factors
from henselkit.diffpoly.poly import DiffPoly, Jet, jet_of, product
from henselkit.diffpoly.printing import format_diffpoly

__all__ = [
    "DiffPoly",
    "Jet",
    "format_diffpoly",
    "jet_of",
    "product",
    "select_vanishing_factor",
    "vanishing_factors",
]
