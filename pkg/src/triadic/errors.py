"""Exception types shared across the toolkit."""

from __future__ import annotations


class TriadicError(Exception):
    """Base class for all toolkit errors."""


class ParseError(TriadicError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, line_number: int, message: str) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class EmptyGraphError(TriadicError):
    """An operation that needs at least one vertex was given an empty graph."""


class NoWedgesError(TriadicError):
    """The requested wedge population (global, per-type, or per-bin) is empty."""


class NoSuchDegreeError(TriadicError):
    """No vertex has the requested degree."""


class DegenerateDegreeError(TriadicError):
    """The requested degree is below 2 and centers no wedges."""
