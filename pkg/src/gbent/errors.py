"""Exception hierarchy."""
from __future__ import annotations



class GBentError(Exception):
    pass


class UsageError(GBentError, ValueError):
    """Bad arguments: mismatched rings, malformed shapes, out-of-range values."""


class DomainError(GBentError, ValueError):
    """A mathematically undefined operation (inverse of zero, eta(0))."""


class ConstructionError(GBentError, ValueError):
    """A construction's hypothesis does not hold for the given parameters."""


class InvalidSpectrum(GBentError, ValueError):
    pass


class BudgetExceeded(GBentError, RuntimeError):
    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        super().__init__(f"{what} needs {required} cases, budget is {budget}")
        self.required = required
        self.budget = budget


class FormatError(GBentError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
