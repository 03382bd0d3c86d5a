"""Exception hierarchy shared by every module."""

from __future__ import annotations


class JumbledError(Exception):
    """Base class for library errors."""


class SearchLimitExceeded(JumbledError):
    pass


class SizeLimitExceeded(JumbledError):
    pass


class BudgetExceeded(JumbledError):
    """Raised when a counting routine would exceed its work budget."""

    def __init__(self, message: str, estimate: float | None = None):
        super().__init__(message)
        self.estimate = estimate


class InvalidModulus(JumbledError):
    pass


class AsymmetricSet(JumbledError):
    pass


class IncompatiblePartial(JumbledError):
    pass


class MissingColor(JumbledError):
    pass


class InsufficientLabel(JumbledError):
    """A jumbled-edge removal or subdivision step needs a larger label."""

    def __init__(self, message: str, edge=None, required=None):
        super().__init__(message)
        self.edge = edge
        self.required = required


class DensifyObligationFailed(JumbledError):
    def __init__(self, message: str, edge=None, required=None):
        super().__init__(message)
        self.edge = edge
        self.required = required


class NoCertificate(JumbledError):
    pass


class ParseError(JumbledError):
    """Malformed input file; ``line`` is 1-based when known."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.path = path
        self.line = line
        self.reason = message


class IoError(JumbledError):
    """A file could not be read or written."""
