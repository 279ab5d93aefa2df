"""Exception hierarchy.

Every error carries the CLI exit code it maps to, so the command-line layer
can translate failures without a lookup table.
"""


class QDLError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class DomainError(QDLError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class ContextError(DomainError):
    """Polynomials live in incompatible variable contexts."""


class PreconditionError(DomainError):
    """A documented precondition of an operation does not hold."""


class UnsupportedInputError(DomainError):
    """Input is well-formed but outside what the implementation covers."""


class DegenerateModelError(DomainError):
    """Weierstrass model with identically vanishing discriminant."""


class ValidationError(DomainError):
    """User-supplied data (e.g. singular points) failed exact verification."""


class InsufficientDataError(DomainError):
    """Not enough information to assemble a result."""


class NonReducedFiberError(UnsupportedInputError):
    """Special fiber has a non-reduced component."""


class DegreeCapError(DomainError):
    """An intermediate polynomial exceeded the degree cap."""


class InternalConsistencyError(QDLError, RuntimeError):
    """An internal invariant failed; indicates a bug rather than bad input."""


class UsageError(QDLError):
    """Malformed command line or malformed textual input."""

    exit_code = 2


class ParseError(UsageError):
    """Syntax error in a polynomial expression."""

    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        detail = f"{message} at line {line}, column {column}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class LimitError(UsageError):
    """Input exceeds a hard size limit (exponent, nesting depth, length)."""


class AccuracyError(QDLError, ArithmeticError):
    """A numerical routine could not reach its accuracy target."""

    exit_code = 3

    def __init__(self, message="", achieved=None):
        self.achieved = achieved
        super().__init__(message)


class FitError(AccuracyError):
    """Least-squares design is rank deficient or otherwise unusable."""


class BasisCollisionError(FitError):
    """Two candidate exponents are too close to be separated."""


class ScanInconclusiveError(AccuracyError):
    """Model-free exponent scan could not identify a leading exponent."""


class ConditioningWarning(UserWarning):
    """Numerical input is close to a degenerate configuration."""
