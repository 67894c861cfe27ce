"""Tests for the henselkit command line."""

import json
from pathlib import Path

import click
import pytest
import yaml
from click.testing import CliRunner

from henselkit.henselkit import henselkit
from henselkit.lib.errors import NotARoot
from henselkit.lib.output import reports_errors

CIRCLE = {"generators": ["x1"], "relations": ["x1^2 + 1"]}
EXP = {"generators": ["x1"], "relations": ["x1' - x1"], "basePoint": {"x1": ["1", "1"]}}
DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def runner(monkeypatch):
    monkeypatch.delenv("HENSELKIT_CONFIG", raising=False)
    return CliRunner()


@pytest.fixture
def circle_file(tmp_path):
    path = tmp_path / "circle.yml"
    path.write_text(yaml.safe_dump(CIRCLE))
    return str(path)


@pytest.fixture
def exp_file(tmp_path):
    path = tmp_path / "exp.yml"
    path.write_text(yaml.safe_dump(EXP))
    return str(path)


def run_json(runner, args):
    result = runner.invoke(henselkit, args)
    assert result.exit_code == 0, result.output
    return json.loads(result.output)


class TestParse:
    """Tests for the parse command."""

    def test_diffpoly_normal_form(self, runner):
        """Test x1^(2) + x1'' collects to 2*x1''."""
        doc = run_json(runner, ["parse", "x1^(2) + x1''"])
        assert doc["kind"] == "diffpoly"
        assert doc["normalForm"] == "2*x1''"
        assert doc["stage"] == 0

    def test_series(self, runner):
        """Test a series is read at the stage of its highest t."""
        doc = run_json(runner, ["parse", "1 + t0 + O(t0^3)"])
        assert doc["kind"] == "series"
        assert doc["stage"] == 1
        assert doc["normalForm"] == "1 + t0 + O(t0^3)"

    def test_syntax_error(self, runner):
        """Test a syntax error exits with code 2."""
        result = runner.invoke(henselkit, ["parse", "1 +"])
        assert result.exit_code == 2
        assert "ExpressionSyntaxError" in result.output

    def test_division_by_zero(self, runner):
        """Test 1/0 is reported as an input error with code 2."""
        result = runner.invoke(henselkit, ["parse", "1/0"])
        assert result.exit_code == 2
        assert "ZeroDivisorInExpression" in result.output

    def test_pretty(self, runner):
        """Test --format pretty renders a panel."""
        result = runner.invoke(henselkit, ["--format", "pretty", "parse", "x1 + 1"])
        assert result.exit_code == 0
        assert "parse" in result.output


class TestSolveDH:
    """Tests for the solve-dh command."""

    def test_exponential(self, runner):
        """Test x1' = x1 near (1, 1) is solved one stage up."""
        doc = run_json(
            runner,
            ["solve-dh", "--poly", "x1' - x1", "--jet", "1,1", "--gamma", "5", "--terms", "8"],
        )
        assert doc["ballCheck"] is True
        assert doc["stage"] == 2
        assert doc["problemStage"] == 1
        assert doc["terms"] == 8

    def test_not_a_root(self, runner):
        """Test a jet off the algebraic locus exits with code 1."""
        result = runner.invoke(
            henselkit, ["solve-dh", "--poly", "x1' - x1", "--jet", "1,2", "--gamma", "5"]
        )
        assert result.exit_code == 1
        assert "NotARoot" in result.output

    def test_bad_polynomial(self, runner):
        """Test an unparsable polynomial exits with code 2."""
        result = runner.invoke(
            henselkit, ["solve-dh", "--poly", "x1' -", "--jet", "1,1", "--gamma", "5"]
        )
        assert result.exit_code == 2

    def test_short_jet(self, runner):
        """Test a jet with fewer than order + 1 entries exits with code 2."""
        result = runner.invoke(
            henselkit, ["solve-dh", "--poly", "x1' - x1", "--jet", "1,", "--gamma", "5"]
        )
        assert result.exit_code == 2
        assert "MalformedJet" in result.output

    def test_taylor_short_jet(self, runner):
        """Test the taylor command checks the jet length the same way."""
        result = runner.invoke(henselkit, ["taylor", "--poly", "x1'' + x1", "--jet", "0, 1"])
        assert result.exit_code == 2
        assert "MalformedJet" in result.output

    def test_exponential_certificate(self, runner):
        """Test the certified solution starts 1 + t1 + (1/2)*t1^2."""
        doc = run_json(
            runner,
            ["solve-dh", "--poly", "x1' - x1", "--jet", "1,1", "--gamma", "5", "--terms", "6"],
        )
        assert doc["solution"]["level"] == 2
        assert doc["solutionText"].startswith("1 + t1 + (1/2)*t1^2")


class TestHensel:
    """Tests for the hensel command."""

    def test_square_root(self, runner):
        """Test x2^2 = 1 + t0 lifts from 1."""
        doc = run_json(
            runner,
            ["hensel", "--system", "x2^2 - 1 - x1", "--fixed", "t0", "--approx", "1"]
            + ["--target", "8"],
        )
        assert doc["valuesText"][0].startswith("1 + (1/2)*t0")
        assert doc["iterations"] <= 5


class TestSolveAlgebra:
    """Tests for the solve-algebra command."""

    def test_exponential(self, runner, exp_file):
        """Test the presentation of x1' = x1 with base point (1, 1)."""
        doc = run_json(
            runner, ["solve-algebra", "--algebra", exp_file, "--gamma", "5", "--terms", "6"]
        )
        assert doc["generators"] == ["x1"]
        assert doc["gamma"] == "(5)"


class TestWeil:
    """Tests for the weil-* commands."""

    def test_descend(self, runner, circle_file, tmp_path):
        """Test the descent of x1^2 + 1 along Q(i)/Q."""
        saved = tmp_path / "descent.yml"
        doc = run_json(
            runner,
            ["weil-descend", "--algebra", circle_file, "--extension", "gaussian"]
            + ["-o", str(saved)],
        )
        assert len(doc["relations"]) == 2
        assert doc["basis"] == ["one", "i"]
        assert all(doc["axioms"].values())
        assert doc["derivation"] == {"x1(1)": "x1'(1)", "x1(2)": "x1'(2)"}
        assert saved.exists()

    def test_unknown_extension(self, runner, circle_file):
        """Test an unknown extension name exits with code 2."""
        result = runner.invoke(
            henselkit, ["weil-descend", "--algebra", circle_file, "--extension", "nowhere"]
        )
        assert result.exit_code == 2

    def test_tau(self, runner, circle_file):
        """Test (0, 1) maps to i and back."""
        doc = run_json(
            runner,
            ["weil-tau", "--algebra", circle_file, "--extension", "gaussian"]
            + ["--point", "x1(1)=0, x1(2)=1"],
        )
        assert doc["direction"] == "K->L"
        assert doc["lPoint"] == {"x1": "(1)*i"}
        assert doc["roundTrip"] is True

    def test_tau_inverse(self, runner, circle_file):
        """Test i maps to (0, 1)."""
        doc = run_json(
            runner,
            ["weil-tau", "--algebra", circle_file, "--extension", "gaussian"]
            + ["--point", "x1=i", "--inverse"],
        )
        assert doc["kPoint"] == {"x1(1)": "0", "x1(2)": "1"}

    def test_tau_rejects_non_point(self, runner, circle_file):
        """Test (1, 0) is not on W(B)."""
        result = runner.invoke(
            henselkit,
            ["weil-tau", "--algebra", circle_file, "--extension", "gaussian"]
            + ["--point", "x1(1)=1, x1(2)=0"],
        )
        assert result.exit_code == 1
        assert "RelationViolated" in result.output

    def test_check_bounds(self, runner):
        """Test the Q(i) bounds for a difference of (2, 0)."""
        doc = run_json(
            runner,
            ["weil-check-bounds", "--extension", "gaussian", "--phi", "3, 2", "--psi", "1, 2"]
            + ["--gamma=-1"],
        )
        assert doc["epsilon"] == "()"
        assert doc["continuity"]["conclusion"] is True
        assert doc["separated"]["holds"] is True

    def test_check_bounds_linear_span(self, runner):
        """Test the separated bound is skipped for the (1, 1 + t0) basis."""
        doc = run_json(
            runner,
            ["weil-check-bounds", "--extension", "linear-span", "--phi", "1, 0"]
            + ["--psi", "0, 1", "--gamma", "0"],
        )
        assert "skipped" in doc["separated"]
        assert doc["separatedSample"] is False


class TestGlobalOptions:
    """Tests for options on the henselkit group."""

    def test_version(self, runner):
        """Test --version."""
        result = runner.invoke(henselkit, ["--version"])
        assert result.exit_code == 0
        assert "henselkit" in result.output

    def test_missing_config(self, runner, tmp_path):
        """Test a missing config file exits with code 2."""
        result = runner.invoke(
            henselkit, ["--config", str(tmp_path / "absent.yml"), "parse", "x1"]
        )
        assert result.exit_code == 2
        assert "ConfigError" in result.output

    def test_bad_precision(self, runner):
        """Test --precision must be integers."""
        result = runner.invoke(henselkit, ["--precision", "a,b", "parse", "x1"])
        assert result.exit_code == 2


class TestErrorReporting:
    """Tests for the shared error wrapper."""

    @staticmethod
    def command_raising(error):
        @click.command()
        @reports_errors
        def failing():
            raise error

        return failing

    def test_library_error(self, runner):
        """Test a library error prints its name and exit code."""
        result = runner.invoke(self.command_raising(NotARoot("f_alg is 1, not 0")))
        assert result.exit_code == 1
        assert "❌ NotARoot: f_alg is 1, not 0" in result.output

    def test_unexpected_error(self, runner):
        """Test any other exception becomes a one-line InternalError with exit 1."""
        result = runner.invoke(self.command_raising(TypeError("unsupported operand\nsecond")))
        assert result.exit_code == 1
        assert "❌ InternalError: TypeError: unsupported operand" in result.output
        assert "second" not in result.output
        assert "Traceback" not in result.output

    def test_usage_errors_pass_through(self, runner):
        """Test click's own errors keep their handling."""
        result = runner.invoke(self.command_raising(click.BadParameter("bad value")))
        assert result.exit_code == 2
        assert "InternalError" not in result.output


class TestCheck:
    """Tests for the check command."""

    def test_series_suite(self, runner):
        """Test a small seeded run of the series suite passes."""
        doc = run_json(runner, ["check", "series", "--trials", "2", "--seed", "42"])
        assert doc["ok"] is True
        assert doc["seed"] == 42
        assert doc["suites"][0]["suite"] == "series"


class TestSampleData:
    """Tests for the sample files shipped in data/."""

    def test_circle_over_file_extension(self, runner):
        """Test the descent of circle.yml along the file version of Q(i)."""
        doc = run_json(
            runner,
            ["weil-descend", "--algebra", str(DATA / "circle.yml")]
            + ["--extension", str(DATA / "gaussian.yml")],
        )
        assert doc["extension"] == "Q(i)"
        assert len(doc["relations"]) == 2

    def test_run_config(self, runner):
        """Test run.yml sets the tower used by parse."""
        doc = run_json(
            runner, ["--config", str(DATA / "run.yml"), "parse", "1 + t1 + O(t1^3)"]
        )
        assert doc["stage"] == 2
