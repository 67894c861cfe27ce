"""Prolongation and the twisted Taylor morphism."""

from henselkit.taylor.morphism import (
    apply_morphism,
    check_valued_taylor,
    next_stage,
    taylor_series,
    twisted_taylor,
)
from henselkit.taylor.prolong import ProlongedPoint, check_point, extend, prolong, shift

__all__ = [
    "ProlongedPoint",
    "apply_morphism",
    "check_point",
    "check_valued_taylor",
    "extend",
    "next_stage",
    "prolong",
    "shift",
    "taylor_series",
    "twisted_taylor",
]
