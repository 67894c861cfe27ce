"""Tests for the valuation bounds between points of W(B) and of B."""

from fractions import Fraction

import pytest

from henselkit.expr.evaluate import parse_series
from henselkit.lib.errors import BasisNotDeclaredSeparated
from henselkit.series.values import ValueVec
from henselkit.weil.algebra import ValuedBasis
from henselkit.weil.bounds import continuity_bound, is_separated_sample, separated_lower_bound
from henselkit.weil.extensions import gaussian_rationals, linear_span_basis, ramified_quadratic


@pytest.fixture
def ramified():
    return ramified_quadratic()


def series(*texts, algebra):
    return [parse_series(text, algebra.field) for text in texts]


class TestValuedBasis:
    """Tests for w on a basis."""

    def test_epsilon(self, ramified):
        """Test ε is the least basis valuation."""
        assert ramified.basis.epsilon == ValueVec.of(0)

    def test_realized_value(self, ramified):
        """Test w(t + s) = 1/2."""
        assert ramified.basis.value(series("t0", "1", algebra=ramified)) == ValueVec.of(
            Fraction(1, 2)
        )

    def test_declared_value(self):
        """Test Q(i) takes the minimum over a separated basis."""
        basis = gaussian_rationals().basis
        assert basis.value([Fraction(3), Fraction(0)]) == ValueVec()

    def test_undeclared_sum(self):
        """Test w of a sum needs a realization or the separated flag."""
        q = gaussian_rationals().field
        basis = ValuedBasis(("a", "b"), (ValueVec.of(0), ValueVec.of(1)), q)
        with pytest.raises(BasisNotDeclaredSeparated):
            basis.value([Fraction(1), Fraction(1)])


class TestContinuity:
    """Tests for continuity_bound."""

    def test_hypothesis_and_conclusion(self, ramified):
        """Test coordinates within t0 force images within 1/2."""
        phi = series("t0", "0", algebra=ramified)
        psi = series("0", "0", algebra=ramified)
        witness = continuity_bound(ramified, phi, psi, ValueVec.of(Fraction(1, 2)))
        assert witness.hypothesis
        assert witness.conclusion
        assert witness.difference == ValueVec.of(1)

    def test_hypothesis_fails(self, ramified):
        """Test a unit change in the s coordinate misses the hypothesis."""
        phi = series("0", "1", algebra=ramified)
        psi = series("0", "0", algebra=ramified)
        witness = continuity_bound(ramified, phi, psi, ValueVec.of(0))
        assert not witness.hypothesis
        assert witness.difference == ValueVec.of(Fraction(1, 2))

    def test_linear_span(self):
        """Test (1, -1) on the (1, 1 + t) basis has image -t."""
        span = linear_span_basis()
        phi, psi = [Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]
        witness = continuity_bound(span, phi, psi, ValueVec.of(0))
        assert not witness.hypothesis
        assert witness.difference == ValueVec.of(1)

    def test_to_json(self, ramified):
        """Test the witness document."""
        phi = series("t0", "0", algebra=ramified)
        psi = series("0", "0", algebra=ramified)
        doc = continuity_bound(ramified, phi, psi, ValueVec.of(0)).to_json()
        assert doc["epsilon"] == "(0)"
        assert doc["conclusion"] is True

    def test_unresolved_difference_uses_ultrametric_bound(self, ramified):
        """Test differences lost in O(t0^4) still settle w > 3 through min v(d_i) + w(b_i)."""
        phi = series("O(t0^4)", "O(t0^4)", algebra=ramified)
        psi = series("0", "0", algebra=ramified)
        witness = continuity_bound(ramified, phi, psi, ValueVec.of(3))
        assert witness.hypothesis
        assert witness.conclusion
        assert witness.difference == ValueVec.of(4)


class TestSeparated:
    """Tests for separated_lower_bound and is_separated_sample."""

    def test_lower_bound(self, ramified):
        """Test each coordinate of (t, 1) stays above w(t + s) - w(b_j)."""
        phi = series("t0", "1", algebra=ramified)
        psi = series("0", "0", algebra=ramified)
        witness = separated_lower_bound(ramified, phi, psi)
        assert witness.holds
        assert witness.bounds == (ValueVec.of(Fraction(1, 2)), ValueVec.of(0))

    def test_equal_points(self, ramified):
        """Test identical points give infinite bounds."""
        phi = series("t0", "1", algebra=ramified)
        witness = separated_lower_bound(ramified, phi, phi)
        assert witness.difference.infinite
        assert witness.holds

    def test_requires_declared_basis(self):
        """Test the linear span basis is refused."""
        with pytest.raises(BasisNotDeclaredSeparated):
            separated_lower_bound(linear_span_basis(), [Fraction(1)] * 2, [Fraction(0)] * 2)

    def test_linear_span_sample(self):
        """Test (1, -1) shows the linear span basis is not separated."""
        assert not is_separated_sample(linear_span_basis(), [[Fraction(1), Fraction(-1)]])

    def test_ramified_samples(self, ramified):
        """Test (1, s) passes on a few samples."""
        samples = [
            series("t0", "1", algebra=ramified),
            series("1 + t0", "t0^2", algebra=ramified),
        ]
        assert is_separated_sample(ramified, samples)

    def test_declared_without_realization(self):
        """Test the declared flag decides when nothing is realized."""
        assert is_separated_sample(gaussian_rationals(), [[Fraction(1), Fraction(1)]])
