"""The series tower Q ⊂ Q((t0)) ⊂ Q((t0))((t1)) ⊂ ... with composed valuation."""

from henselkit.series.codec import format_series, series_from_json, series_to_json
from henselkit.series.tower import (
    Coefficient,
    TowerDescriptor,
    TowerElement,
    angular_component,
    derive,
    embed,
    generator,
    in_open_ball,
    recast,
    residue,
    residue_section,
    valuation,
)
from henselkit.series.values import ValueVec, parse_value

__all__ = [
    "Coefficient",
    "TowerDescriptor",
    "TowerElement",
    "ValueVec",
    "angular_component",
    "derive",
    "embed",
    "format_series",
    "generator",
    "in_open_ball",
    "parse_value",
    "recast",
    "residue",
    "residue_section",
    "series_from_json",
    "series_to_json",
    "valuation",
]
