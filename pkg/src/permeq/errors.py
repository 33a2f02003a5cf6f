"""Exception types shared across the package."""


class PermeqError(Exception):
    """Base class for all library errors."""


class ValidationError(PermeqError):
    """Malformed input: bad permutation data, shape mismatch, bad parameters."""


class InfeasibleError(PermeqError):
    """An exhaustive computation would exceed its configured cap."""

    def __init__(self, message, required=None, cap=None):
        super().__init__(message)
        self.required = required
        self.cap = cap


class DslError(ValidationError):
    """Syntax or semantic error in equation-system source text."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column
