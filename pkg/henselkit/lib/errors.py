"""Error hierarchy for henselkit.

Every error carries the stable name used in CLI diagnostics and certificates.
``InputError`` subclasses mean the caller handed us something malformed (exit code 2),
``ComputationError`` subclasses mean the mathematics could not be carried out (exit code 1).
"""

from __future__ import annotations

from fractions import Fraction


class HenselkitError(Exception):
    """Base class for all henselkit errors."""

    exit_code = 1

    def __init__(self, message: str):
        self.message = message
        super().__init__(message)

    @property
    def name(self) -> str:
        return type(self).__name__

    def describe(self) -> str:
        """One-line ``Name: message`` form used by the CLI."""
        first_line = self.message.splitlines()[0] if self.message else ""
        return f"{self.name}: {first_line}"


class InputError(HenselkitError):
    """Malformed text, file or configuration."""

    exit_code = 2


class ComputationError(HenselkitError):
    """A well-formed request that cannot be answered."""

    exit_code = 1


# --- input errors ---------------------------------------------------------


class ExpressionSyntaxError(InputError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} (at position {position})")


class UnknownVariable(InputError):
    pass


class LatticeError(InputError):
    """Exponent outside the configured (1/d)·Z lattice."""


class LevelMismatch(InputError):
    pass


class ConfigError(InputError):
    pass


class ZeroDivisorInExpression(InputError):
    """A literal division by an exact zero."""


class MalformedJet(InputError):
    """A jet whose length does not match the order of its polynomial."""


# --- series tower ---------------------------------------------------------


class DivisionByIndistinguishableZero(ComputationError):
    pass


class IndistinguishableFromZero(ComputationError):
    """All known coefficients vanish; only a lower bound on the top exponent is known."""

    def __init__(self, message: str, lower_bound: Fraction | None = None):
        self.lower_bound = lower_bound
        super().__init__(message)


class NegativeValuation(ComputationError):
    pass


# --- differential polynomials --------------------------------------------


class VariableAbsent(ComputationError):
    pass


class JetTooShort(ComputationError):
    pass


class InsufficientPrecision(ComputationError):
    pass


class NoVanishingFactor(ComputationError):
    pass


class MultipleVanishingFactors(ComputationError):
    pass


# --- taylor / solver ------------------------------------------------------


class InsufficientJet(ComputationError):
    pass


class DegeneratePoint(ComputationError):
    def __init__(self, message: str, indistinguishable: bool = False):
        self.indistinguishable = indistinguishable
        super().__init__(message)


class NotARoot(ComputationError):
    pass


class SingularJacobian(ComputationError):
    pass


class DominanceFailure(ComputationError):
    pass


class PrecisionExhausted(ComputationError):
    pass


class UndecidedAtPrecision(ComputationError):
    pass


class NonTriangularPresentation(ComputationError):
    pass


# --- weil -----------------------------------------------------------------


class RelationViolated(ComputationError):
    pass


class BasisNotDeclaredSeparated(ComputationError):
    pass


class DescentVerificationError(ComputationError):
    pass


class TheoremViolation(ComputationError):
    """An inequality that must hold whenever its hypothesis holds failed."""
