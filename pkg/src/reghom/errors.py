"""Exception hierarchy.

Every error raised on bad input derives from :class:`ReghomError`, so callers
(and the CLI) can separate invalid input from internal failures.
"""

from __future__ import annotations


class ReghomError(ValueError):
    """Base class for all invalid-input errors."""


class InvalidSignature(ReghomError):
    pass


class DimensionMismatch(ReghomError):
    pass


class NotSeifert(ReghomError):
    pass


class EntryOverflow(ReghomError):
    pass


class NotPrimitive(ReghomError):
    pass


class ZeroClass(NotPrimitive):
    pass


class NotFormPreserving(ReghomError):
    pass


class IndexOutOfRange(ReghomError):
    pass


class OddParity(ReghomError):
    pass


class NotEquivalent(ReghomError):
    pass


class WordSyntaxError(ReghomError):
    pass


class DocumentError(ReghomError):
    """A document could not be parsed. Carries a 1-based source position."""

    def __init__(self, message: str, line: int = 0, col: int = 0) -> None:
        self.line = line
        self.col = col
        self.message = message
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(where + message)


class DocumentSyntaxError(DocumentError):
    def __init__(self, line: int, col: int, expected: str, found: str | None = None) -> None:
        self.expected = expected
        self.found = found
        msg = f"expected {expected}"
        if found is not None:
            msg += f", found {found!r}"
        super().__init__(msg, line, col)


class UnknownBandName(DocumentError):
    pass


class SelfCrossing(DocumentError):
    pass


class DuplicateTwistDeclaration(DocumentError):
    pass


class MissingSurfaceHeader(DocumentError):
    pass
