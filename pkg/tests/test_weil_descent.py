"""Tests for Weil descent, the τ correspondence and the descent derivation."""

from fractions import Fraction

import pytest
import yaml

from henselkit.diffpoly.poly import DiffPoly
from henselkit.lib.errors import InputError, RelationViolated, UnknownVariable
from henselkit.series.tower import generator
from henselkit.weil.descent import (
    ExtensionPresentation,
    descend,
    descended_grid,
    descent_derivation_table,
    derive_relations,
    extension_grid,
    parse_element,
    point_key,
    tau,
    tau_inverse,
    verify_descent_derivation,
)
from henselkit.weil.extensions import gaussian_rationals, ramified_quadratic
from henselkit.weil.files import load_extension

GAUSSIAN_FILE = {
    "name": "Q(i) from file",
    "dim": 2,
    "labels": ["one", "i"],
    "structureConstants": [[[1, 0], [0, 1]], [[0, 1], [-1, 0]]],
    "derivationMatrix": [[0, 0], [0, 0]],
    "basisValuations": ["0", "0"],
    "separated": True,
}


@pytest.fixture
def gaussian():
    return gaussian_rationals()


@pytest.fixture
def circle(gaussian):
    """W(B) for B = L[x1]/(x1^2 + 1) over L = Q(i)."""
    return descend(ExtensionPresentation.parse(gaussian, ["x1"], ["x1^2 + 1"]))


class TestExtensions:
    """Tests for the shipped and file-defined extensions."""

    def test_gaussian_axioms(self, gaussian):
        """Test Q(i) satisfies every axiom."""
        assert all(gaussian.check_axioms().values())

    def test_ramified_leibniz(self):
        """Test ∂s = s/(2t) is a derivation of Q((t^(1/2)))."""
        report = ramified_quadratic().check_axioms()
        assert report["associative"] and report["commutative"]
        assert report["unit"] and report["leibniz"]

    def test_i_squared(self, gaussian):
        """Test i*i = -1."""
        i = gaussian.basis_element(1)
        assert i * i == -1

    def test_parse_element(self, gaussian):
        """Test 3 + 4*i has coordinates (3, 4)."""
        assert parse_element("3 + 4*i", gaussian).coords == (3, 4)

    def test_unknown_label(self, gaussian):
        """Test only basis labels are accepted."""
        with pytest.raises(InputError):
            parse_element("3 + j", gaussian)

    def test_extension_file(self, tmp_path):
        """Test an extension file describing Q(i)."""
        path = tmp_path / "gaussian.yml"
        path.write_text(yaml.safe_dump(GAUSSIAN_FILE))
        algebra = load_extension(path)
        assert algebra.name == "Q(i) from file"
        assert all(algebra.check_axioms().values())
        i = algebra.basis_element(1)
        assert i * i == -1

    def test_bad_structure_shape(self, tmp_path):
        """Test structure constants of the wrong shape are rejected."""
        data = dict(GAUSSIAN_FILE, structureConstants=[[[1, 0]]])
        path = tmp_path / "broken.yml"
        path.write_text(yaml.safe_dump(data))
        with pytest.raises(InputError):
            load_extension(path)


class TestDescend:
    """Tests for descend."""

    def test_circle(self, gaussian, circle):
        """Test x1^2 + 1 descends to a^2 - b^2 + 1 and 2ab."""
        a = DiffPoly.variable(gaussian.field, 2, 0)
        b = DiffPoly.variable(gaussian.field, 2, 1)
        expected = [a * a - b * b + 1, a * b * 2]
        assert len(circle.relations) == 2
        assert all((r - e).is_zero for r, e in zip(circle.relations, expected))
        assert circle.origin == ((0, 0), (0, 1))

    def test_names(self, circle):
        """Test x1(i) naming of descended variables."""
        assert circle.generator_names() == ["x1(1)", "x1(2)"]
        assert circle.name((1, 1)) == "x1'(2)"

    def test_to_json(self, circle):
        """Test the descent document."""
        doc = circle.to_json()
        assert doc["extension"] == "Q(i)"
        assert doc["origin"][0] == {"relation": 1, "coordinate": 1, "source": "x1^2 + 1"}

    def test_ramified_relation(self):
        """Test x1^2 - s descends to a^2 + t·b^2 and 2ab - 1."""
        ramified = ramified_quadratic()
        base = ramified.field
        desc = descend(ExtensionPresentation.parse(ramified, ["x1"], ["x1^2 - s"]))
        a = DiffPoly.variable(base, 2, 0)
        b = DiffPoly.variable(base, 2, 1)
        expected = [a * a + b * b * generator(base, 0), a * b * 2 - 1]
        assert all((r - e).is_zero for r, e in zip(desc.relations, expected))

    def test_generator_names_checked(self, gaussian):
        """Test generators must be x1..xm."""
        with pytest.raises(InputError):
            ExtensionPresentation.parse(gaussian, ["y"], [])

    def test_undeclared_generator(self, gaussian):
        """Test relations may only use declared generators."""
        with pytest.raises(UnknownVariable):
            ExtensionPresentation.parse(gaussian, ["x1"], ["x2 + 1"])


class TestTau:
    """Tests for τ and its inverse."""

    def test_tau(self, gaussian, circle):
        """Test (0, 1) maps to i."""
        image = tau({(0, 0): Fraction(0), (1, 0): Fraction(1)}, circle)
        assert image[(0, 0)] == gaussian.basis_element(1)

    def test_tau_rejects_non_points(self, circle):
        """Test (1, 0) does not lie on W(B)."""
        with pytest.raises(RelationViolated):
            tau({(0, 0): Fraction(1), (1, 0): Fraction(0)}, circle)

    def test_tau_needs_every_coordinate(self, circle):
        """Test a point missing x1(2) is rejected."""
        with pytest.raises(RelationViolated):
            tau({(0, 0): Fraction(0)}, circle)

    def test_inverse(self, gaussian, circle):
        """Test -i maps back to (0, -1)."""
        point = tau_inverse({(0, 0): parse_element("-i", gaussian)}, circle)
        assert point == {(0, 0): 0, (1, 0): -1}

    def test_inverse_rejects_non_points(self, gaussian, circle):
        """Test 1 does not satisfy x1^2 + 1 = 0."""
        with pytest.raises(RelationViolated):
            tau_inverse({(0, 0): gaussian.one()}, circle)

    def test_grid_bijection(self, circle):
        """Test τ matches the K-points and L-points found on the {-2..2} grid."""
        values = [Fraction(v) for v in range(-2, 3)]
        k_points = descended_grid(circle, values)
        l_points = extension_grid(circle.source, values)
        images = {point_key(tau(p, circle)) for p in k_points}
        assert images == {point_key(p) for p in l_points}
        assert len(images) == 2
        for p in k_points:
            assert point_key(tau_inverse(tau(p, circle), circle)) == point_key(p)


class TestDescentDerivation:
    """Tests for the derivation of W(B)."""

    def test_gaussian_derivation_is_shift(self, gaussian, circle):
        """Test δ^W(x1(1)) = x1'(1) when ∂ vanishes on the basis."""
        table = descent_derivation_table(circle, 0)
        assert (table[(0, 0)] - DiffPoly.variable(gaussian.field, 2, 0, 1)).is_zero

    def test_ramified_derivation(self):
        """Test δ^W(x1(2)) = x1'(2) - x1(2)/(2t) and that it verifies."""
        ramified = ramified_quadratic()
        base = ramified.field
        desc = descend(ExtensionPresentation.parse(ramified, ["x1"], ["x1^2 - s"]))
        table = descent_derivation_table(desc, 1)
        assert len(table) == 4
        expected = DiffPoly.variable(base, 2, 1, 1) - DiffPoly.variable(base, 2, 1, 0) * (
            generator(base, 0, -1) * Fraction(1, 2)
        )
        assert (table[(1, 0)] - expected).is_zero
        assert (table[(0, 0)] - DiffPoly.variable(base, 2, 0, 1)).is_zero
        verify_descent_derivation(desc, 0, 2)

    def test_derived_relations(self, gaussian, circle):
        """Test δ^W(a^2 - b^2 + 1) = 2aa' - 2bb'."""
        q = gaussian.field
        a, a1 = DiffPoly.variable(q, 2, 0), DiffPoly.variable(q, 2, 0, 1)
        b, b1 = DiffPoly.variable(q, 2, 1), DiffPoly.variable(q, 2, 1, 1)
        derived = derive_relations(circle)
        assert (derived[0] - (a * a1 * 2 - b * b1 * 2)).is_zero
