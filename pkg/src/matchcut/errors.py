"""Exception taxonomy for the matchcut package.

Every error raised by the library derives from :class:`MatchcutError`, so
callers can catch one type.  Parse errors carry a line number when one is
known.
"""

from __future__ import annotations


class MatchcutError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(MatchcutError):
    """A text input (graph, colouring, matching or instance file) is malformed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DisconnectedInput(MatchcutError):
    """An operation that requires a connected graph received a disconnected one."""


class PatternTooLarge(MatchcutError):
    """The pattern graph exceeds the supported size for induced-subgraph search."""


class NotFound(MatchcutError):
    """The requested structure does not exist in the graph."""


class PartialColouring(MatchcutError):
    """An operation that requires a total colouring received a partial one."""


class BadStartingPair(MatchcutError):
    """The two seed sets violate a starting-pair invariant."""


class MalformedTuple(MatchcutError):
    """The four-tuple does not have the structure required by the operation."""


class NotApplicable(MatchcutError):
    """The solver's structural precondition does not hold for this input."""


class NotDominating(MatchcutError):
    """The supplied vertex set does not dominate the graph."""


class TooLarge(MatchcutError):
    """The input exceeds the hard size cap of an exhaustive operation."""


class NotAnEdge(MatchcutError):
    """The supplied vertex pair is not an edge of the graph."""


class MalformedInstance(MatchcutError):
    """The 1-in-3 instance violates a structural invariant."""


class NotOneInThree(MatchcutError):
    """The truth assignment does not satisfy exactly one literal per clause."""


class InvalidColouring(MatchcutError):
    """The colouring does not satisfy the predicate required by the operation."""
