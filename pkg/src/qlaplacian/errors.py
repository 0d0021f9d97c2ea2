"""Exception types shared across the package."""


class InvariantError(ValueError):
    """Raised when an input violates a documented precondition or invariant."""


class ResourceCapError(RuntimeError):
    """Raised when a scan or enumeration would exceed its configured cap."""
