"""Parsing and Taylor-morphism commands."""

from .cli import parse, taylor

__all__ = ["parse", "taylor"]
