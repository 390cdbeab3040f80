"""Exception types shared across the package."""


class GdsError(Exception):
    """Base class for all errors raised by this package."""


class NonPositiveProfile(GdsError):
    """A profile evaluated to a non-positive value (underflow or bad parameters)."""


class QuadratureFailure(GdsError):
    """The adaptive quadrature backing a profile did not converge."""


class InvalidGrid(GdsError):
    """A sampling grid request was malformed (bad bounds or too few samples)."""


class NotInPsi(GdsError):
    """The profile fails the admissibility check (h(t) = alpha sinh t not monotone)."""


class DegenerateMetric(GdsError):
    """The chart metric is singular at the requested point (null hypersurface)."""


class OutOfChart(GdsError):
    """A chart point lies outside the safe interior of the hyperspherical chart."""


class OutOfRange(GdsError):
    """An ambient coordinate lies outside the image of h, so no chart time exists."""


class NotOnSurface(GdsError):
    """An ambient point is too far from the hypersurface to invert the embedding."""
