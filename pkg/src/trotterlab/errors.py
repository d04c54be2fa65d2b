"""Exception types shared across trotterlab.

The CLI maps these onto exit codes: UsageError -> 1, NumericalError -> 2,
PropertyViolation -> 3.
"""


class UsageError(ValueError):
    """Bad input: dimension mismatch, malformed config, unknown name."""


class NumericalError(ArithmeticError):
    """A numerical routine failed to reach its tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class PropertyViolation(AssertionError):
    """A checked inequality was violated (used by the verify campaign)."""
