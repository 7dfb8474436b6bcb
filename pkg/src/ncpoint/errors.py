"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class NCError(Exception):
    """Base class for all errors raised by ncpoint."""


class ContextMismatchError(NCError):
    """Two values live over incompatible alphabets."""


class UnknownSymbolError(NCError):
    """A name is not declared in the relevant context."""


class SymbolKindError(NCError):
    """A symbol has the wrong kind for the requested operation."""


class InsufficientPrecisionError(NCError):
    """A coefficient beyond a series' valid order was requested."""


class NonconvergentSubstitutionError(NCError):
    """A substitution or geometric inverse would need infinitely many terms per degree."""


class PlaceholderCollisionError(NCError):
    """The placeholder constant already occurs in the series."""


class FeasibilityError(NCError):
    """An exhaustive check was requested over too large an alphabet."""


class DecodeError(NCError):
    """A structured document is malformed."""


class ParseError(NCError):
    """Syntax error in a source program, located by line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line else ""
        super().__init__(f"{where}{message}")


class UndeclaredIdentifierError(ParseError):
    pass


class ReservedIdentifierError(ParseError):
    pass
