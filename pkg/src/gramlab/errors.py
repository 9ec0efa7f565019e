"""Exception types shared across the package."""


class GramlabError(Exception):
    """Base class for gramlab errors."""


class DomainError(GramlabError, ValueError):
    """Input outside the mathematical domain of an operation."""


class NonConvergenceError(GramlabError, ArithmeticError):
    """An iterative solver failed to converge."""

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class AuditError(GramlabError, RuntimeError):
    """A zero census failed its completeness audit."""


class CacheError(GramlabError, RuntimeError):
    """A zero cache is corrupt or does not cover the requested range."""


class ResourceError(GramlabError, RuntimeError):
    """A computation would exceed a hard resource limit."""
