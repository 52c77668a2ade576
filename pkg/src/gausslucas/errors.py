"""Exception types raised across the package."""


class GaussLucasError(Exception):
    """Base class for all package errors."""


class PoleAtChargeLocation(GaussLucasError, ValueError):
    """Evaluation point coincides with a charge (a root of P)."""


class NonConvergence(GaussLucasError):
    """Root iteration ran out of sweeps above the residual target.

    The partial :class:`~gausslucas.roots.SolveReport` is attached as ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class StalledAtCriticalPoint(GaussLucasError):
    """Newton polish hit a point where the derivative vanishes."""


class NotSeparable(GaussLucasError, ValueError):
    """Asked for a separating direction for a point inside the hull."""


class DegenerateTriangle(GaussLucasError, ValueError):
    pass


class TooFewSamples(GaussLucasError, ValueError):
    pass


class IoFailure(GaussLucasError, OSError):
    pass
