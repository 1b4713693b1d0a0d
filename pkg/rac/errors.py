"""Exception hierarchy shared by every rac module.

Tool servers turn any ``RacError`` into ``fastmcp.exceptions.ToolError``; the CLI maps
``DrawingFormatError`` to exit code 2 and the rest to exit code 1.
"""


class RacError(Exception):
    """Base class for toolkit failures."""


class DrawingFormatError(RacError):
    """Malformed drawing document, bad coordinate string or duplicate id."""


class InvalidDrawing(RacError):
    """A valid RAC1 drawing was required but validation reported violations."""


class PreconditionViolated(RacError):
    """Input outside the domain of an operation (n < 5, disconnected graph, ...)."""


class NotProperCrossing(RacError):
    """Two segments do not cross in their interiors."""


class TriplePoint(RacError):
    """Three or more edge interiors meet in one point."""


class OverlappingSegments(RacError):
    """Two segments share a collinear piece of positive length."""


class NonTerminating(RacError):
    """Iteration guard tripped; indicates a bug rather than bad input."""


class MissingBendSide(RacError):
    """A crossed one-bend edge has a collinear (degenerate) bend."""


class NotCertified(RacError):
    """A bound was requested from a ledger without a certified verdict."""


class FaceNotGood(RacError):
    """The per-face bound only applies to good faces."""


class UnknownT(RacError):
    """A face carries no removal provenance."""


class OrderViolation(RacError):
    """A removal would merge two faces that were both created by earlier removals."""


class RayMiss(RacError):
    """Chord endpoint rays do not meet inside the face."""


class DegenerateScale(RacError):
    """The nesting scale factor fell outside (0, 1)."""
