"""Truncated Trotter product formulas on a bosonic mode."""
from . import bounds, diagnostics, fock, linalg, trotter
from .errors import NumericalError, PropertyViolation, UsageError

__version__ = "0.1.0"

__all__ = [
    "bounds", "diagnostics", "fock", "linalg", "trotter",
    "NumericalError", "PropertyViolation", "UsageError", "__version__",
]
