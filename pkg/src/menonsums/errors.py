"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ResourceError(RuntimeError):
    """The request is well-formed but exceeds the configured desk-scale bounds."""


class IntegrityError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
