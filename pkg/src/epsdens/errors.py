"""Exception hierarchy shared by all modules."""


class EpsdensError(Exception):
    """Base class for every error raised by the package."""


class DimensionError(EpsdensError, ValueError):
    """Monomials or ideals living in rings with different variable counts."""


class InputError(EpsdensError, ValueError):
    """Malformed user input (ideal files, monomial text, matrices)."""


class FitFailure(EpsdensError):
    """No offset in the search schedule produced a validated fit.

    ``diagnostics`` carries a JSON-serializable description of the best
    attempt (largest residual table, chamber, offsets tried).
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class StructuralError(EpsdensError):
    """A structural theorem was violated by computed data.

    This always indicates a bug (wrong period, wrong oracle), never bad input.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class UnverifiedRegionError(EpsdensError):
    """A saturated length was requested outside the verified window."""

    def __init__(self, message, window=None):
        super().__init__(message)
        self.window = window
