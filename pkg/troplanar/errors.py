"""
Error Types
===========

Every failure raised by the library derives from ``TroplanarError`` so the
CLI can map them to exit codes in one place.
"""

from typing import Any, Optional


class TroplanarError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str, subject: Any = None):
        super().__init__(message)
        self.subject = subject


class DegenerateInput(TroplanarError):
    pass


class InvalidTriangulation(TroplanarError):
    pass


class NotUnimodular(InvalidTriangulation):
    pass


class NotATiling(InvalidTriangulation):
    pass


class NotFaceToFace(InvalidTriangulation):
    pass


class MissingLatticeVertex(InvalidTriangulation):
    pass


class NotASplitEdge(TroplanarError):
    pass


class LimitExceeded(TroplanarError):
    pass


class GenusZero(TroplanarError):
    pass


class NotACutEdge(TroplanarError):
    pass


class InvalidGraph(TroplanarError):
    """Vertex out of range, or a degree other than 3 where trivalence is required."""


class OutOfRange(TroplanarError):
    pass


class GenusOutOfRange(TroplanarError):
    pass


class Disconnected(TroplanarError):
    pass


class CatalogMissing(TroplanarError):
    pass


class NotOneLoopMatch(TroplanarError):
    pass


class NotTwoLoopsMatch(TroplanarError):
    pass


class NotDoubleHeavyMatch(TroplanarError):
    pass


class MatchDoesNotMapToTriangulation(TroplanarError):
    pass


class ParseError(TroplanarError):
    """Malformed input file. ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int = 0, column: int = 0, source: Optional[str] = None):
        super().__init__(message)
        self.line = line
        self.column = column
        self.source = source

    def __str__(self) -> str:
        where = self.source or "<input>"
        return f"{where}:{self.line}:{self.column}: {self.args[0]}"
