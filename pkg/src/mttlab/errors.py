"""Exception types raised across mttlab."""


class MTTError(Exception):
    """Base class for every error raised by this package.

    ``where`` names the offending field or degree; ``diagnostics`` carries
    the full list when several problems were collected before raising.
    """

    def __init__(self, message, where=None, diagnostics=None):
        super().__init__(message)
        self.where = where
        self.diagnostics = list(diagnostics or [])


class DimensionError(MTTError, ValueError):
    """Matrix or complex shapes do not line up."""


class ValidationError(MTTError, ValueError):
    """A mathematical invariant (d^2 = 0, chain-map equation, ...) is violated."""


class WiringError(MTTError, ValueError):
    """A kernel or map was applied in the wrong sector."""


class ParseError(MTTError, ValueError):
    """Malformed serialized input."""
