"""
Exception hierarchy shared by all modules.

MalformedInput maps to CLI exit code 2, DomainError to exit code 1.
"""


class TropicaError(Exception):
    """Base class; carries machine-readable details for the CLI error JSON."""

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        payload = {"type": type(self).__name__, "message": self.message}
        payload.update(self.details)
        return payload


class MalformedInput(TropicaError, ValueError):
    """Input that cannot be parsed or is structurally invalid."""


class DomainError(TropicaError):
    """Well-formed input that the mathematics rejects."""


class InvalidBase(DomainError):
    pass


class NonTransverse(DomainError):
    """Raised by transverse_intersections; use stable_intersections instead."""

    def __init__(self, reason, point, **details):
        super().__init__(f"curves do not meet transversally ({reason})",
                         reason=reason, point=[str(c) for c in point], **details)
        self.reason = reason
        self.point = point


class NonStandardSupport(DomainError):
    pass


class PreconditionFailed(DomainError):
    def __init__(self, reason, **details):
        super().__init__(f"patchworking precondition failed: {reason}", reason=reason, **details)
        self.reason = reason


class NonRegularSubdivision(DomainError):
    def __init__(self, message, cycle):
        super().__init__(message, cycle=list(cycle))
        self.cycle = list(cycle)


class UnsupportedDegree(DomainError):
    pass


class EmptyCurve(DomainError):
    pass


class ZeroCoordinate(DomainError):
    pass


class EmptyViewport(DomainError):
    pass
