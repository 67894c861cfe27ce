"""Tests for theme utility functions."""

from rich.theme import Theme

from henselkit.lib.theme import COLORS, HENSELKIT_THEME, get_border_style, verdict_style


class TestThemeConstants:
    """Tests for theme constant definitions."""

    def test_colors_has_required_keys(self):
        """Test COLORS has every key the result panels use."""
        for key in ["primary", "secondary", "tertiary", "success", "error", "warning", "dim"]:
            assert key in COLORS

    def test_theme_is_theme(self):
        """Test HENSELKIT_THEME is a Rich Theme instance."""
        assert isinstance(HENSELKIT_THEME, Theme)


class TestGetBorderStyle:
    """Tests for get_border_style function."""

    def test_known_styles(self):
        """Test default, success and error borders."""
        assert get_border_style() == COLORS["tertiary"]
        assert get_border_style("success") == COLORS["success"]
        assert get_border_style("error") == COLORS["error"]

    def test_unknown_style_falls_back(self):
        """Test unknown style names use the default border."""
        assert get_border_style("nonexistent") == COLORS["tertiary"]


class TestVerdictStyle:
    """Tests for verdict_style function."""

    def test_certificate_verdicts(self):
        """Test ballCheck and ok decide the panel style."""
        assert verdict_style({"ballCheck": True}) == "success"
        assert verdict_style({"ok": False, "trials": 3}) == "error"

    def test_first_key_wins(self):
        """Test ok is consulted before ballCheck."""
        assert verdict_style({"ok": True, "ballCheck": False}) == "success"

    def test_no_verdict(self):
        """Test documents without a verdict use the default border."""
        assert verdict_style({"normalForm": "2*x1''"}) == "default"
        assert verdict_style({"holds": None}) == "default"
