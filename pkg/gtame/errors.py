"""Exception hierarchy for gtame.

The CLI maps these onto exit codes; library code raises them and never
exits the process.
"""

from __future__ import annotations

from typing import Any


class GTameError(Exception):
    """Base class for every error raised by gtame."""

    def __init__(self, message: str, location: str | None = None):
        super().__init__(message)
        self.message = message
        self.location = location

    def __str__(self) -> str:
        if self.location:
            return f"{self.location}: {self.message}"
        return self.message


class ConfigurationError(GTameError):
    """Invalid sampling or run configuration."""


class AlgebraSpecError(GTameError):
    """The algebra description cannot be turned into an algebra."""


class MalformedRelation(AlgebraSpecError):
    """A relation is empty, mentions unknown arrows, or mixes non-parallel paths."""


class NotAdmissible(AlgebraSpecError):
    """The declared nilpotency bound is not implied by the relations."""


class DimensionMismatch(GTameError):
    """A vector does not have one entry per vertex."""


class NotGenericallyInjective(GTameError):
    """No sampled element of Hom(g) was a monomorphism."""


class NegativeSummandPresent(GTameError):
    """A g-vector has a negative direct summand where none is allowed."""


class LowConfidence(GTameError):
    """Monte-Carlo samples disagreed more than the configured tolerance."""

    def __init__(self, message: str, report: Any = None, location: str | None = None):
        super().__init__(message, location)
        self.report = report
