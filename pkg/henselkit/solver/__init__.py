"""Solvers: differentially henselian problems, Newton lifting, points of presented algebras."""

from henselkit.solver.algebra import (
    AlgebraPoint,
    AlgebraPresentation,
    certify_algebra_point,
    solve_algebra_point,
)
from henselkit.solver.dh import (
    DHProblem,
    certify,
    check_dl,
    closeness,
    iterate_stages,
    solve_dh,
    tower_extend,
)
from henselkit.solver.hensel import HenselLift, hensel_lift_system

__all__ = [
    "AlgebraPoint",
    "AlgebraPresentation",
    "DHProblem",
    "HenselLift",
    "certify",
    "certify_algebra_point",
    "check_dl",
    "closeness",
    "hensel_lift_system",
    "iterate_stages",
    "solve_algebra_point",
    "solve_dh",
    "tower_extend",
]
