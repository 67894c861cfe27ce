"""Colors for `--format pretty` and for error messages."""

from typing import Any

from rich.theme import Theme

COLORS = {
    "primary": "steel_blue1",  # panel titles
    "secondary": "light_sky_blue3",
    "tertiary": "grey58",  # borders
    "success": "sea_green3",
    "error": "indian_red",
    "warning": "gold3",
    "dim": "grey50",
}

HENSELKIT_THEME = Theme(
    {
        **COLORS,
        "repr.number": COLORS["secondary"],
        "repr.str": COLORS["primary"],
        "repr.bool_true": COLORS["success"],
        "repr.bool_false": COLORS["error"],
    }
)

# Result keys that carry a pass/fail verdict, in the order they are consulted
VERDICT_KEYS = ("ok", "ballCheck", "holds", "roundTrip")


def get_border_style(style_type: str = "default") -> str:
    """Border color for result panels: 'default', 'success' or 'error'."""
    return {
        "success": COLORS["success"],
        "error": COLORS["error"],
    }.get(style_type, COLORS["tertiary"])


def verdict_style(document: dict[str, Any]) -> str:
    """'success' or 'error' from the first verdict key present, else 'default'."""
    for key in VERDICT_KEYS:
        if isinstance(document.get(key), bool):
            return "success" if document[key] else "error"
    return "default"


__all__ = ["COLORS", "HENSELKIT_THEME", "get_border_style", "verdict_style"]
