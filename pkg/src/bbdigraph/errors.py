"""Exception types raised across the package."""


class BBDError(Exception):
    """Base class for all errors raised by bbdigraph."""


class InvalidInputError(BBDError, ValueError):
    """An argument is outside the domain an operation accepts."""


class CapacityError(BBDError):
    """The requested size exceeds what an exact routine is allowed to attempt."""


class ParseError(InvalidInputError):
    """Malformed BBD text. ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message
