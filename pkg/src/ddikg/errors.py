"""Exception hierarchy shared across the package.

Every error raised by ddikg code derives from :class:`DdiKgError`, so
callers (and the CLI exit-code mapping) can catch one base class.
"""

from __future__ import annotations


class DdiKgError(Exception):
    """Base class for all ddikg errors."""


class ParseError(DdiKgError):
    """A line-oriented input file could not be parsed."""

    def __init__(self, message: str, *, source: str = "<input>", line: int | None = None):
        self.source = source
        self.line = line
        where = source if line is None else f"{source}:{line}"
        super().__init__(f"{where}: {message}")


class SchemaError(DdiKgError):
    """An entity kind or relation is not part of the declared schema."""


class GraphValidationError(DdiKgError):
    """A triple violates the graph's structural constraints."""


class UnknownEntityError(DdiKgError, KeyError):
    """An entity or relation identifier is not registered in the graph."""

    def __str__(self) -> str:  # KeyError would repr() the message
        return Exception.__str__(self)


class SplitError(DdiKgError):
    """The requested split fractions cannot be honored."""


class NumericError(DdiKgError):
    """A non-finite value appeared during loss or gradient computation."""

    def __init__(self, message: str, triple=None):
        self.triple = triple
        if triple is not None:
            message = f"{message} (triple: {triple})"
        super().__init__(message)


class ResolutionError(DdiKgError):
    """A drug could not be resolved to a KG vector and no fallback applies."""


class CliUsageError(DdiKgError):
    """Invalid command-line arguments or config file entries."""
