"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input violates a documented precondition (shape, domain, symmetry)."""


class NumericalError(RuntimeError):
    """A numerical procedure failed to converge or lost too much accuracy."""
