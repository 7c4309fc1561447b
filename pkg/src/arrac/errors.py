"""Exception hierarchy for the engine.

Every error raised by the library derives from :class:`ArracError`, so callers
(and the CLI exit-code mapping) can distinguish engine failures from plain
Python bugs.  Errors that name a witnessing index or location expose it as an
attribute in addition to the message.
"""

from __future__ import annotations


class ArracError(Exception):
    """Base class for all engine errors.

    ``span`` is filled in by the query evaluator when the error surfaced while
    evaluating a parsed expression; it is ``None`` for direct library calls.
    """

    span = None


class ArityMismatch(ArracError):
    """An index has the wrong number of coordinates for its array."""


class ConsistencyViolation(ArracError):
    """Two associations share an index but disagree on the value."""

    def __init__(self, message: str, index=None):
        super().__init__(message)
        self.index = index


class PredicateArity(ArracError):
    """A predicate references a dimension outside the array's arity."""


class BadStep(ArracError):
    """An index-transformation step is malformed for the current arity."""


class NotInjective(ArracError):
    """An index transformation collapsed two distinct support indices."""

    def __init__(self, message: str, collided=None):
        super().__init__(message)
        self.collided = collided


class NotInvertible(ArracError):
    """A transformation cannot be inverted: recorded coordinate data missing."""


class NotDisjoint(ArracError):
    """A support index matched more than one partition predicate."""

    def __init__(self, message: str, index=None):
        super().__init__(message)
        self.index = index


class NotExhaustive(ArracError):
    """A support index matched none of the partition predicates."""

    def __init__(self, message: str, index=None):
        super().__init__(message)
        self.index = index


class NotTupleValued(ArracError):
    """Horizontal partitioning needs uniform tuple values."""


class BadSlices(ArracError):
    """Slice sets overlap, leave gaps, or are empty."""


class NotPushable(ArracError):
    """A selection cannot be pushed through this placement."""


class SchemaMismatch(ArracError):
    """A table row does not fit the declared schema."""


class DuplicateKey(ArracError):
    """Two table rows share a key value."""


class MissingCell(ArracError):
    """A decoded table row lacks a cell for some column."""

    def __init__(self, message: str, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class UnknownLabel(ArracError):
    """A dimension label is not present in the label map."""


class FormatError(ArracError):
    """An exchange-format file does not parse."""

    def __init__(self, message: str, line=None):
        super().__init__(message)
        self.line = line


class ParseError(ArracError):
    """Query text does not match the grammar."""

    def __init__(self, message: str, line: int, column: int, expected=()):
        super().__init__(message)
        self.line = line
        self.column = column
        self.expected = frozenset(expected)


class UnboundName(ArracError):
    """An expression references a name missing from the catalog."""


class ArityError(ArracError):
    """Static arity checking failed for an expression node."""
