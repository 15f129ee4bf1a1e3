"""Exception types shared across the toolkit."""

from __future__ import annotations


class AvogripError(Exception):
    """Base class for all toolkit errors."""


class DomainError(AvogripError):
    """A value violates an operation precondition or a type invariant."""

    def __init__(self, message: str, *, field: str | None = None):
        super().__init__(message)
        self.field = field


class AlphaRangeError(DomainError):
    """Drive angle outside the geometry's actuation range."""

    def __init__(self, alpha: float, alpha_range: tuple[float, float]):
        lo, hi = alpha_range
        super().__init__(
            f"alpha {alpha:.6f} rad outside actuation range "
            f"[{lo:.6f}, {hi:.6f}] rad",
            field="alpha",
        )
        self.alpha = alpha
        self.alpha_range = alpha_range


class UnreachableApertureError(DomainError):
    """Requested opening outside what the finger linkage can reach."""

    def __init__(self, opening: float, achievable: tuple[float, float]):
        lo, hi = achievable
        super().__init__(
            f"opening {opening:.6f} m unreachable; achievable apertures are "
            f"[{lo:.6f}, {hi:.6f}] m",
            field="opening",
        )
        self.opening = opening
        self.achievable = achievable


class NonTransmittingConfigurationError(DomainError):
    """Finger force has no closing component at this drive angle."""

    def __init__(self, message: str, *, alpha: float | None = None):
        super().__init__(message, field="alpha")
        self.alpha = alpha


class DatasetParseError(AvogripError):
    """A CSV row could not be parsed."""

    def __init__(self, message: str, *, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DatasetIntegrityError(AvogripError):
    """Parsed rows violate a dataset invariant (e.g. duplicate sample)."""


class RotationModelError(AvogripError):
    """No trial data available to predict a required rotation."""


class InvalidTransitionError(AvogripError):
    """Harvest state machine received an event with no edge from the state."""

    def __init__(self, state: object, event: object):
        super().__init__(f"no transition from {state} on event {event}")
        self.state = state
        self.event = event
