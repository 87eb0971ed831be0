"""Exception hierarchy shared across the package."""


class ClosedSpaceError(Exception):
    """Base class for every error raised by closedcoulomb."""


class OutOfDomain(ClosedSpaceError, ValueError):
    """Point lies on or outside the validity box of a chart."""


class SingularMetric(ClosedSpaceError, ArithmeticError):
    """Metric determinant is below the trust threshold."""


class StepTooLarge(ClosedSpaceError, ValueError):
    """Finite-difference stencil leaves the chart domain."""


class DimensionMismatch(ClosedSpaceError, ValueError):
    pass


class BadAngle(ClosedSpaceError, ValueError):
    pass


class OutOfRange(ClosedSpaceError, ValueError):
    pass


class ZeroDistance(ClosedSpaceError, ValueError):
    pass


class PoleSingularity(ClosedSpaceError, ValueError):
    """Field requested within the pole margin, where it diverges."""


class NonNeutralizable(ClosedSpaceError, ValueError):
    """Declared charges cannot be completed into a neutral system."""


class BadContour(ClosedSpaceError, ValueError):
    pass


class BadGrid(ClosedSpaceError, ValueError):
    pass


class NonNeutralSource(ClosedSpaceError, ValueError):
    """Source with nonzero monopole: Poisson's equation on a closed space has no solution."""

    def __init__(self, monopole=None):
        msg = "total charge on a closed space must be zero"
        if monopole is not None:
            msg += f" (monopole coefficient {monopole!r})"
        super().__init__(msg)
        self.monopole = monopole


class NotConverged(ClosedSpaceError, ArithmeticError):
    pass
