"""Exception hierarchy shared by every module."""


class GRZError(Exception):
    """Base class for all errors raised by grzcert."""


class InvalidParameterError(GRZError, ValueError):
    """A parameter lies outside the domain of an operation."""


class InvalidInputError(GRZError, ValueError):
    """An input object is malformed (zero polynomial, empty series, degree mismatch)."""


class NotInvertibleError(GRZError, ZeroDivisionError):
    pass


class EndpointDegenerateError(GRZError):
    """A query endpoint is itself a root; the caller must nudge the endpoint."""

    def __init__(self, endpoint, message=None):
        self.endpoint = endpoint
        super().__init__(message or f"endpoint {endpoint} is a root of the polynomial")


class HypothesisViolatedError(GRZError, ValueError):
    """Parameters violate a hypothesis of the statement being checked."""


class ResourceLimitError(GRZError):
    """A run would exceed a configured resource cap."""

    def __init__(self, cap_name: str, required: int, cap: int):
        self.cap_name = cap_name
        self.required = required
        self.cap = cap
        super().__init__(f"{cap_name}: need {required}, cap is {cap} (use --force to override)")


class BisectionDepthError(GRZError, RuntimeError):
    pass
