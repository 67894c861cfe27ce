"""Tests for differential points of triangular presentations."""

from fractions import Fraction
from math import factorial

import pytest

from henselkit.expr.evaluate import parse_diffpoly
from henselkit.lib.errors import (
    InputError,
    InsufficientPrecision,
    JetTooShort,
    NonTriangularPresentation,
    NotARoot,
)
from henselkit.lib.schemas import PresentationSchema
from henselkit.series.tower import vanishes
from henselkit.series.values import ValueVec
from henselkit.solver.algebra import (
    AlgebraPresentation,
    certify_algebra_point,
    solve_algebra_point,
)
from henselkit.weil.files import build_presentation


def exp_presentation(stage1, jet=(1, 1)):
    return AlgebraPresentation(
        ("x1",),
        (parse_diffpoly("x1' - x1", stage1),),
        {"x1": tuple(Fraction(v) for v in jet)},
    )


class TestPresentation:
    """Tests for AlgebraPresentation."""

    def test_generator_names(self):
        """Test generators must be x1..xm in order."""
        with pytest.raises(InputError):
            AlgebraPresentation(("y",))

    def test_leaders(self, stage1):
        """Test each relation is led by its highest generator."""
        presentation = AlgebraPresentation(
            ("x1", "x2"),
            (parse_diffpoly("x1' - 1", stage1), parse_diffpoly("x2 - x1^2", stage1)),
        )
        assert sorted(presentation.leaders()) == [0, 1]

    def test_two_relations_one_leader(self, stage1):
        """Test x1 may lead only one relation."""
        presentation = AlgebraPresentation(
            ("x1",),
            (parse_diffpoly("x1' - x1", stage1), parse_diffpoly("x1 - 1", stage1)),
        )
        with pytest.raises(NonTriangularPresentation):
            presentation.leaders()


class TestSolveAlgebraPoint:
    """Tests for solve_algebra_point."""

    def test_exponential(self, stage1, stage2):
        """Test x1' = x1 through (1, 1) gives Σ t1^i / i!."""
        point = solve_algebra_point(exp_presentation(stage1), ValueVec.of(5), 8, stage2)
        image = point.images["x1"]
        assert all(vanishes(image.coefficient(i) - Fraction(1, factorial(i))) for i in range(8))
        assert point.ball_check

    def test_free_generator(self):
        """Test an unconstrained generator is perturbed along t0."""
        presentation = AlgebraPresentation(("x1",), (), {"x1": (Fraction(2),)})
        point = solve_algebra_point(presentation, ValueVec.of(0), 4)
        image = point.images["x1"]
        assert [image.coefficient(i) for i in range(4)] == [2, 1, 0, 0]
        assert point.ball_check

    def test_triangular_pair(self, stage1, stage2):
        """Test x2 = x1^2 follows x1 through the prolongation."""
        presentation = AlgebraPresentation(
            ("x1", "x2"),
            (parse_diffpoly("x2 - x1^2", stage1, num_vars=2),),
            {"x1": (Fraction(1),), "x2": (Fraction(1),)},
        )
        point = solve_algebra_point(presentation, ValueVec.of(0), 6, stage2)
        x1, x2 = point.images["x1"], point.images["x2"]
        assert vanishes(x2 - x1 * x1)

    def test_not_a_root(self, stage1, stage2):
        """Test a base point off the relation is rejected."""
        with pytest.raises(NotARoot):
            solve_algebra_point(exp_presentation(stage1, (2, 1)), ValueVec.of(0), 8, stage2)

    def test_missing_base_point(self, stage1, stage2):
        """Test every generator needs a base value."""
        presentation = AlgebraPresentation(("x1",), (parse_diffpoly("x1' - x1", stage1),), {})
        with pytest.raises(InputError):
            solve_algebra_point(presentation, ValueVec.of(0), 8, stage2)

    def test_short_base_jet(self, stage1, stage2):
        """Test an order-1 relation needs x1 and x1' in the base point."""
        with pytest.raises(JetTooShort):
            solve_algebra_point(exp_presentation(stage1, (1,)), ValueVec.of(0), 8, stage2)

    def test_too_few_terms(self, stage1, stage2):
        """Test one term cannot certify an order-1 relation."""
        with pytest.raises(InsufficientPrecision):
            solve_algebra_point(exp_presentation(stage1), ValueVec.of(0), 1, stage2)

    def test_certificate(self, stage1, stage2):
        """Test the certificate layout."""
        point = solve_algebra_point(exp_presentation(stage1), ValueVec.of(5), 8, stage2)
        doc = certify_algebra_point(point)
        assert set(doc) == {"solution", "solutionText", "residuals", "ballCheck"}
        assert doc["ballCheck"] is True
        assert list(doc["solution"]) == ["x1"]


class TestBuildPresentation:
    """Tests for presentations read from their file schema."""

    def test_stage_from_literals(self):
        """Test t0 in a relation places the presentation over Q((t0))."""
        schema = PresentationSchema(
            generators=["x1"], relations=["x1' - t0"], base_point={"x1": ["0", "t0"]}
        )
        presentation = build_presentation(schema)
        assert presentation.field.height == 1

    def test_unknown_generator_in_base_point(self):
        """Test base points may only name declared generators."""
        schema = PresentationSchema(
            generators=["x1"], relations=["x1' - x1"], base_point={"x2": ["1"]}
        )
        with pytest.raises(InputError):
            build_presentation(schema)
