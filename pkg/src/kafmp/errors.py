"""Exceptions shared across the package."""


class ParseError(ValueError):
    """Malformed expression text; ``pos`` is the 0-based offending offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class BudgetExceeded(RuntimeError):
    """A construction would exceed its configured size limit."""
