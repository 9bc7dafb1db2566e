"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed input (dimension mismatch, bad matrix, unknown field, ...)."""


class ParameterError(ValueError):
    """Parameters outside the documented range."""


class UnsupportedError(ValueError):
    """Operation not defined for this (d, p) combination."""


class SearchExhaustedError(RuntimeError):
    """A bounded search ran out of budget without finding a witness."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
