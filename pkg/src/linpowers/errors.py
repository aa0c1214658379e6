"""Exception types shared across the package."""


class LinPowersError(Exception):
    """Base class for all package errors."""


class SingularSystem(LinPowersError):
    """A linear system has no unique solution."""


class NotLinearShape(LinPowersError):
    """A Hilbert numerator does not have the shape of a linear resolution."""


class HeldOutMismatch(LinPowersError):
    """An interpolated polynomial disagrees with a held-out sample."""


class ResourceCapExceeded(LinPowersError):
    """A computation would exceed a configured size cap."""


class ConsistencyError(LinPowersError):
    """Two independent computations of the same quantity disagree."""
