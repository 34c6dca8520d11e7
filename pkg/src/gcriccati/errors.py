"""Exception types raised by the numerical routines."""


class GCRiccatiError(Exception):
    """Base class for all numeric failures in this package."""


class DegenerateRoots(GCRiccatiError):
    """Polynomial roots are too close for the spectral formulas."""


class DomainError(GCRiccatiError, ValueError):
    pass


class NearPole(GCRiccatiError):
    """The requested value is unbounded (or numerically so) at this point.

    ``partial`` carries whatever was computed before the pole was hit,
    e.g. the tracked states of a bridge path.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else []


class Indeterminate(GCRiccatiError):
    """A summation formula has a vanishing denominator."""


class AtSingularity(GCRiccatiError):
    """A logarithmic argument coincides with a root of the polynomial."""


class NoConvergence(GCRiccatiError):
    pass


class PoleEncountered(GCRiccatiError):
    """The ODE integrator ran into a blow-up of the solution."""

    def __init__(self, message, phi=None, u=None):
        super().__init__(message)
        self.phi = phi
        self.u = u


class StepUnderflow(GCRiccatiError):
    pass


class SegmentNearRoot(GCRiccatiError):
    pass
