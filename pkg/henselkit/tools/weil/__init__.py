"""Weil descent commands."""

from .points import parse_coordinates, parse_k_point, parse_l_point

__all__ = ["parse_coordinates", "parse_k_point", "parse_l_point"]
