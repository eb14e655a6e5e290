"""Exception types shared across the package."""


class SurfsatError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SurfsatError, ValueError):
    """Malformed input data (schema violations, bad field values).

    ``path`` locates the offending field, e.g. ``curves[2].genus``.
    """

    def __init__(self, message, path=None):
        self.path = path
        if path is not None:
            message = f"{path}: {message}"
        super().__init__(message)


class PreconditionError(SurfsatError, ValueError):
    """An operation was called outside its stated preconditions."""


class DataInconsistencyError(SurfsatError, ValueError):
    """Input data contradicts a fact that is impossible on an actual surface.

    Raised e.g. for three pairwise disjoint false-fibre claims, or for a
    connected semidefinite boundary component with a kernel of rank >= 2.
    """
