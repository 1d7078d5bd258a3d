"""Exception types shared across the package."""

from __future__ import annotations


class GirthGeomError(Exception):
    """Base class for all package-specific errors."""


class BudgetExhausted(GirthGeomError):
    """A bounded search ran out of its node budget before concluding.

    This is explicitly *not* a negative answer; it only means the search
    was inconclusive within the allowed number of node expansions.
    """

    def __init__(self, message: str, used: int = 0, limit: int = 0):
        super().__init__(message)
        self.used = used
        self.limit = limit


class ProviderRefusal(GirthGeomError):
    """A certificate provider declined the request (unsupported parameters)."""


class ProviderFailure(GirthGeomError):
    """A certificate provider produced a provably invalid certificate."""


class ConstructionError(GirthGeomError):
    """A geometric construction violated one of its structural assertions.

    Carries an optional ``detail`` payload naming the violating pair or
    the failed condition, for diagnostics.
    """

    def __init__(self, message: str, detail: object = None):
        super().__init__(message)
        self.detail = detail


class SceneFormatError(GirthGeomError):
    """A scene, certificate, or report document failed to parse or validate."""
