"""Exception hierarchy shared by the library, the CLI and the HTTP service."""


class GcError(Exception):
    """Base class for every error raised by gcjacobi."""


class ParseError(GcError):
    """Malformed polynomial text."""

    def __init__(self, message: str, column: int) -> None:
        """Store the 1-based column where parsing stopped."""
        super().__init__(f"column {column}: {message}")
        self.message = message
        self.column = column


class SizeMismatchError(GcError):
    """Operands of different matrix size."""


class SeriesError(GcError):
    """A power series operation got an operand outside its domain."""


class DomainError(GcError):
    """An argument violates the precondition of an operation."""
