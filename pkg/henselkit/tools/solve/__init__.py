"""
Solve - differentially henselian problems, Newton lifting and points of presented algebras.
"""

from .builder import build_problem, parse_system, stage_for, with_retry

__all__ = ["build_problem", "parse_system", "stage_for", "with_retry"]
