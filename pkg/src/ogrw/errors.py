"""Exception hierarchy. Every failure carries a stable reason ``code``."""
from __future__ import annotations


class OgrwError(Exception):
    """Base class; ``code`` is one of the documented reason codes."""

    def __init__(self, code: str, message: str = "", where: str | None = None):
        self.code = code
        self.where = where
        detail = f"{code}"
        if where is not None:
            detail += f" at {where}"
        if message:
            detail += f": {message}"
        super().__init__(detail)


class SignatureError(OgrwError):
    pass


class GraphError(OgrwError):
    pass


class MorphismError(OgrwError):
    pass


class BoundaryError(OgrwError):
    pass


class RuleError(OgrwError):
    pass


class CospanError(OgrwError):
    pass


class SemanticsError(OgrwError):
    pass


class TheoryError(OgrwError):
    """PARSE_ERROR / VALIDATION_ERROR raised while reading theory files."""
