"""Exception hierarchy shared by all modules."""


class PrevarietyError(Exception):
    """Base class for every error raised by this package."""


class MalformedInputError(PrevarietyError, ValueError):
    """Rows of inconsistent length or otherwise ill-formed input data."""


class EmptyRegionError(PrevarietyError, ValueError):
    """An operation that needs a nonempty region received an empty one."""


class DegenerateOrientationError(PrevarietyError):
    """No injective orientation vector was found within the retry budget."""


class DegenerateFanError(PrevarietyError, ValueError):
    """A polytope without edges has an empty tropical hypersurface."""


class ParseError(PrevarietyError, ValueError):
    """Input text could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OracleTooLargeError(PrevarietyError):
    """The brute-force oracle refuses instances above its size guard."""
