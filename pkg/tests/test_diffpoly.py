"""Tests for differential polynomials."""

import math
import random
from fractions import Fraction

import pytest

from henselkit.diffpoly.factors import select_vanishing_factor, vanishing_factors
from henselkit.diffpoly.poly import DiffPoly, jet_of
from henselkit.diffpoly.printing import format_diffpoly, variable_name
from henselkit.expr.evaluate import parse_diffpoly, parse_series
from henselkit.lib.errors import (
    InsufficientPrecision,
    JetTooShort,
    MultipleVanishingFactors,
    NoVanishingFactor,
    VariableAbsent,
)
from henselkit.series.tower import derive, generator, residue, vanishes
from henselkit.tools.check.suites import random_diffpoly, random_nonzero_series, random_problem


class TestStructure:
    """Tests for order, separant and partial derivatives."""

    def test_order_and_separant(self, stage1):
        """Test f = x1'' + x1*x1' - t0 has order 2 and separant 1."""
        f = parse_diffpoly("x1'' + x1*x1' - t0", stage1)
        assert f.order() == 2
        separant = f.separant()
        assert separant.is_constant
        assert vanishes(separant.constant_term() - 1)

    def test_order_of_absent_variable(self, stage1):
        """Test a polynomial without x1 has no order in x1."""
        with pytest.raises(VariableAbsent):
            parse_diffpoly("t0", stage1, num_vars=1).order()

    def test_partial(self):
        """Test ∂/∂x1 of x1^3*x1' is 3*x1^2*x1'."""
        f = parse_diffpoly("x1^3*x1'")
        assert str(f.partial(0, 0)) == "3*x1^2*x1'"

    def test_involves(self):
        """Test involves looks at every variable index."""
        f = parse_diffpoly("x2' + 1")
        assert f.involves(1)
        assert not f.involves(0)


class TestDerivation:
    """Tests for the ring derivation."""

    def test_chain_rule(self):
        """Test δ(x1^2) = 2*x1*x1'."""
        assert str(parse_diffpoly("x1^2").derive()) == "2*x1*x1'"

    def test_coefficients_are_derived(self, stage1):
        """Test δ(t0*x1) = x1 + t0*x1'."""
        d = parse_diffpoly("t0*x1", stage1).derive()
        assert (d - parse_diffpoly("t0*x1' + x1", stage1)).is_zero

    def test_derive_n(self):
        """Test three derivations of x1 give x1^(3)."""
        assert str(parse_diffpoly("x1").derive_n(3)) == "x1^(3)"


class TestEvaluation:
    """Tests for alg_eval and diff_eval."""

    def test_alg_eval_forgets_derivation(self):
        """Test f_alg(2, 5) = 3 for f = x1' - x1."""
        f = parse_diffpoly("x1' - x1")
        assert f.alg_eval([[Fraction(2), Fraction(5)]]) == 3

    def test_alg_eval_short_jet(self):
        """Test a jet without x1' raises."""
        with pytest.raises(JetTooShort):
            parse_diffpoly("x1' - x1").alg_eval([[Fraction(2)]])

    def test_diff_eval(self, stage1):
        """Test (x1' - x1)(t0) = 1 - t0."""
        f = parse_diffpoly("x1' - x1", stage1)
        value = f.diff_eval(generator(stage1, 0))
        assert vanishes(value - parse_series("1 - t0", stage1))

    def test_diff_eval_needs_precision(self, stage1):
        """Test two derivatives of 1 + O(t0^2) leave nothing."""
        f = parse_diffpoly("x1''", stage1)
        with pytest.raises(InsufficientPrecision):
            f.diff_eval(parse_series("1 + O(t0^2)", stage1))

    def test_jet_of(self, stage1):
        """Test Jet_2(t0^2) = (t0^2, 2 t0, 2)."""
        jet = jet_of(parse_series("t0^2", stage1), 2)
        assert vanishes(jet[1] - parse_series("2*t0", stage1))
        assert vanishes(jet[2] - 2)

    def test_diff_eval_one_stage_up(self, stage1, stage2):
        """Test (x1' - t0*x1)(t1) = 1 - t0*t1 with the point one stage above f."""
        f = parse_diffpoly("x1' - t0*x1", stage1)
        value = f.diff_eval(generator(stage2, 1))
        assert vanishes(value - parse_series("1 - t0*t1", stage2))

    def test_evaluation_commutes_with_derivation(self, stage1):
        """Test (δp)(a) = δ(p(a)) at seeded random points."""
        rng = random.Random(41)
        for _ in range(20):
            p = random_diffpoly(rng, stage1, 2)
            point = [random_nonzero_series(rng, stage1, 3) for _ in range(2)]
            assert vanishes(p.derive().diff_eval(point) - derive(p.diff_eval(point)))

    def test_separant_is_difference_quotient(self, stage1):
        """Test res((f(.., c_n + t0) - f(c)) / t0) = s_f(c) on seeded problems."""
        rng = random.Random(43)
        h = generator(stage1, 0)
        for _ in range(20):
            problem = random_problem(rng)
            f = problem.poly
            n = f.order()
            jet = list(problem.jet[: n + 1])
            moved = [*jet[:n], jet[n] + h]
            quotient = (f.alg_eval([moved]) - f.alg_eval([jet])) / h
            assert vanishes(residue(quotient) - f.separant().alg_eval([jet]))


class TestArithmetic:
    """Tests for ring operations on polynomials."""

    def test_cancellation(self):
        """Test x1 - x1 is the zero polynomial."""
        x = DiffPoly.variable(parse_diffpoly("x1").field, 1, 0)
        assert (x - x).is_zero

    def test_power(self):
        """Test (x1 + 1)^2 expands."""
        assert str(parse_diffpoly("(x1 + 1)^2")) == "x1^2 + 2*x1 + 1"

    def test_scalar_division(self):
        """Test dividing by a rational constant."""
        assert str(parse_diffpoly("x1/2")) == "(1/2)*x1"

    def test_variable_out_of_range(self):
        """Test a variable index beyond num_vars raises."""
        with pytest.raises(VariableAbsent):
            DiffPoly.variable(parse_diffpoly("x1").field, 1, 1)


class TestPrinting:
    """Tests for the canonical text form."""

    @pytest.mark.parametrize(
        ("var", "name"),
        [((0, 0), "x1"), ((0, 1), "x1'"), ((1, 2), "x2''"), ((0, 3), "x1^(3)")],
    )
    def test_variable_names(self, var, name):
        """Test the prime and ^(k) spellings."""
        assert variable_name(var) == name

    def test_series_coefficient(self, stage1):
        """Test multi-term coefficients print in parentheses."""
        assert str(parse_diffpoly("(1 + t0)*x1'", stage1)) == "(1 + t0)*x1'"

    def test_custom_names(self):
        """Test the naming hook."""
        f = parse_diffpoly("x1 - 1")
        assert format_diffpoly(f, lambda var: "y") == "y - 1"

    def test_zero(self):
        """Test the zero polynomial prints as 0."""
        assert str(parse_diffpoly("x1 - x1")) == "0"

    def test_rational_coefficient_over_a_stage(self, stage1):
        """Test a rational coefficient read in a stage keeps its parentheses."""
        assert str(parse_diffpoly("x1/2 - t0", stage1)) == "(1/2)*x1 - t0"


class TestFactors:
    """Tests for picking the vanishing factor."""

    def test_unique_factor(self):
        """Test (x1' - x1)(x1' - 5) at (1, 1) picks the first factor."""
        factors = [parse_diffpoly("x1' - x1"), parse_diffpoly("x1' - 5")]
        jet = [[Fraction(1), Fraction(1)]]
        assert vanishing_factors(factors, jet) == [0]
        assert select_vanishing_factor(factors, jet) == 0

    def test_no_factor(self):
        """Test a jet no factor kills."""
        factors = [parse_diffpoly("x1' - x1"), parse_diffpoly("x1' - 5")]
        with pytest.raises(NoVanishingFactor):
            select_vanishing_factor(factors, [[Fraction(1), Fraction(2)]])

    def test_several_factors(self):
        """Test two vanishing factors raise."""
        factors = [parse_diffpoly("x1' - x1"), parse_diffpoly("x1' - 1")]
        with pytest.raises(MultipleVanishingFactors):
            select_vanishing_factor(factors, [[Fraction(1), Fraction(1)]])

    def test_selection_matches_direct_evaluation(self):
        """Test the selected factor is the one a monomial-by-monomial sum says vanishes."""
        rng = random.Random(47)
        for _ in range(20):
            problem = random_problem(rng)
            f = problem.poly
            jet = list(problem.jet[: f.order() + 1])
            factors = [f + k for k in rng.sample(range(1, 6), 2)] + [f]
            rng.shuffle(factors)
            by_hand = [
                i
                for i, g in enumerate(factors)
                if sum(
                    (c * math.prod(jet[order] ** exp for (_, order), exp in m) for m, c in g.terms),
                    Fraction(0),
                )
                == 0
            ]
            assert by_hand == [select_vanishing_factor(factors, [jet])]
