"""Tests for value vectors."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from henselkit.lib.errors import InputError
from henselkit.series.values import ValueVec, min_value, parse_value

fractions = st.fractions(min_value=-100, max_value=100, max_denominator=6)
vectors = st.lists(fractions, min_size=0, max_size=3).map(lambda cs: ValueVec(tuple(cs)))


class TestOrdering:
    """Tests for reverse-lexicographic comparison."""

    def test_outer_coordinate_dominates(self):
        """Test the last coordinate decides before the first."""
        assert ValueVec.of(100, 0) < ValueVec.of(-100, 1)

    def test_padding_with_zeros(self):
        """Test vectors of different lengths compare after padding."""
        assert ValueVec.of(5) == ValueVec.of(5, 0)
        assert ValueVec.of(5) < ValueVec.of(0, 1)
        assert ValueVec.of(0, -1) < ValueVec.of(5)

    def test_infinity_is_largest(self):
        """Test infinity exceeds every finite vector."""
        assert ValueVec.of(10**9, 10**9) < ValueVec.infinity()
        assert not ValueVec.infinity() < ValueVec.infinity()

    def test_equal_vectors_hash_alike(self):
        """Test padded equal vectors share a hash."""
        assert hash(ValueVec.of(3)) == hash(ValueVec.of(3, 0))

    @given(vectors, vectors)
    def test_total_order(self, a, b):
        """Test exactly one of <, ==, > holds."""
        assert sum([a < b, a == b, b < a]) == 1

    @given(vectors, vectors, vectors)
    def test_translation_invariance(self, a, b, c):
        """Test a < b implies a + c < b + c."""
        if a < b:
            assert a + c < b + c


class TestArithmetic:
    """Tests for group operations."""

    def test_add_pads(self):
        """Test addition of different lengths."""
        assert ValueVec.of(1) + ValueVec.of(1, 2) == ValueVec.of(2, 2)

    def test_sub(self):
        """Test subtraction."""
        assert ValueVec.of(Fraction(1, 2)) - ValueVec.of(1) == ValueVec.of(Fraction(-1, 2))

    def test_infinity_absorbs(self):
        """Test infinity plus anything is infinity."""
        assert (ValueVec.infinity() + ValueVec.of(3)).infinite

    def test_min_value(self):
        """Test min_value of an empty list is infinity."""
        assert min_value([]).infinite
        assert min_value([ValueVec.of(0, 1), ValueVec.of(9)]) == ValueVec.of(9)

    @given(vectors)
    def test_negation_inverts(self, a):
        """Test a + (-a) is zero."""
        assert a + (-a) == ValueVec()


class TestParseValue:
    """Tests for parse_value."""

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("5", ValueVec.of(5)),
            ("1,-1", ValueVec.of(1, -1)),
            ("(1, -1/2)", ValueVec.of(1, Fraction(-1, 2))),
            ("", ValueVec()),
        ],
    )
    def test_parses(self, text, expected):
        """Test the accepted forms."""
        assert parse_value(text) == expected

    def test_infinity(self):
        """Test 'inf' parses to infinity."""
        assert parse_value("inf").infinite

    def test_invalid(self):
        """Test garbage raises InputError."""
        with pytest.raises(InputError):
            parse_value("1, x")

    def test_str(self):
        """Test formatting."""
        assert str(ValueVec.of(1, Fraction(-1, 2))) == "(1, -1/2)"
        assert str(ValueVec.infinity()) == "inf"
