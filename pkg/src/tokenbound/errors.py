"""Exception types shared across the package."""

from __future__ import annotations


class TokenboundError(Exception):
    """Base class for all errors raised by tokenbound."""


class ArgumentError(TokenboundError, ValueError):
    """An argument is outside the operation's domain."""


class ParseError(TokenboundError, ValueError):
    """Malformed graph6 or edge-list input.

    ``offset`` is the 0-based byte offset of the offending character when
    known, ``line`` the 1-based line number inside a stream.
    """

    def __init__(self, message: str, offset: int | None = None, line: int | None = None):
        self.offset = offset
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class UnsupportedOrderError(ArgumentError):
    """The internal enumerator does not handle this order."""


class ResourceError(TokenboundError):
    """A construction would exceed the configured size cap."""


class NumericalError(TokenboundError):
    """An eigensolver produced non-finite output or failed its residual check."""


class PreconditionError(TokenboundError, ValueError):
    """Input graph does not satisfy a structural precondition."""


class ConjectureViolation(TokenboundError):
    """Raised in strict mode when a conjecture check fails."""

    def __init__(self, report):
        self.report = report
        super().__init__(
            f"{report.conjecture} violated on {report.graph_id} (k={report.k}): "
            f"lhs={report.lhs:.12g} > rhs={report.rhs:.12g}"
        )
