"""Exception hierarchy shared by the parsing, analysis and conversion layers."""


class ParityRevError(Exception):
    """Base class for all errors raised by this package."""


class WidthMismatch(ParityRevError, ValueError):
    """An operation needs equal input and output widths."""


class TooLarge(ParityRevError, ValueError):
    """A table or enumeration exceeds the configured size cap."""


class NotReversible(ParityRevError, ValueError):
    pass


class PreconditionViolated(ParityRevError, ValueError):
    pass


class InfeasibleCompletion(ParityRevError, RuntimeError):
    """Unused rows cannot be matched within parity classes.

    Only reachable when an upstream invariant was broken.
    """


class PlaError(ParityRevError, ValueError):
    """Base class for PLA parse failures; carries the offending line number."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class PlaSyntaxError(PlaError):
    pass


class ConflictError(PlaError):
    """Two cubes assign different outputs to the same minterm."""


class WidthError(PlaError):
    """A cube pattern length disagrees with the declared .i/.o counts."""


class UncoveredMinterms(PlaError):
    """Raised in strict mode when some minterm has no cube."""


class PlaWarning(UserWarning):
    """Non-fatal parse issue (defaulted rows, resolved output don't-cares)."""
