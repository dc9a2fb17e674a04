class BudgetExceeded(ValueError):
    """Raised when an exact computation would exceed its enumeration budget."""


class InvariantViolation(AssertionError):
    """A mathematical invariant failed to hold. This always indicates a bug."""
