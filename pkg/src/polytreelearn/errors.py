"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed input text; carries a 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PreconditionError(ValueError):
    """An operation was called on inputs that violate its contract."""


class RefusalError(RuntimeError):
    """Input exceeds a safety cap (node count, enumeration guard)."""
