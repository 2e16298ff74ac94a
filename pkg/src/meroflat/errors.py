"""Exception hierarchy shared by all modules."""


class MeroflatError(Exception):
    """Base class for errors raised by meroflat."""


class DomainError(MeroflatError, ValueError):
    """Input is well-formed but outside the mathematical domain of an operation."""


class ResourceError(MeroflatError):
    """A computation exceeded its step or precision budget."""


class ParseError(MeroflatError, ValueError):
    """Malformed expression or payload.  ``position`` is a character offset when known."""

    def __init__(self, message, position=None, source=None):
        self.position = position
        self.source = source
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
