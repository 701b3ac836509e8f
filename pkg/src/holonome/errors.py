"""Error types shared across the package."""


class DomainError(ValueError):
    """Raised when an input violates a documented precondition."""
