"""Exception hierarchy shared across the engine.

Parse-level failures (bad input text) are kept apart from engine-level
failures (state-space caps, inconsistent theories) so the CLI can map them
to distinct exit codes.
"""

from __future__ import annotations


class ParseError(ValueError):
    """Malformed input text. Carries a 1-based source line where known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BoundsError(ParseError):
    """Interval bounds outside [0,1] or lower > upper."""


class DefeasibleEvidenceError(ParseError):
    """A defeasible constraint appeared where only strict ones are allowed."""


class EngineError(Exception):
    """Base class for failures of the reasoning engine itself."""


class VocabularyTooLargeError(EngineError):
    """More atoms than the explicit world-enumeration cap supports."""


class UnknownAtomError(EngineError):
    """A formula mentions an atom outside the ambient vocabulary."""


class SigmaInconsistentError(EngineError):
    """The default theory admits no admissible default ranking."""


class PriorityInconsistentError(EngineError):
    """The default theory admits no admissible priority ordering."""


class TooManyDefaultsError(EngineError):
    """Default count exceeds the enumeration cap of the priority-order semantics."""
