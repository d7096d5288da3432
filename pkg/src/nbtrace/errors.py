"""Exception types shared across the package."""


class NbtraceError(Exception):
    """Base class for all package-specific errors."""


class NonRegular(NbtraceError):
    """A graph fails the constant-degree requirement."""


class EmptyGraph(NbtraceError):
    """No vertices or no edges where at least one is required."""


class InvalidParameter(NbtraceError):
    """Generator or operation parameters outside their valid range."""


class BudgetExceeded(NbtraceError):
    """An exponential enumeration exceeded its configured work cap."""


class RouteMismatch(NbtraceError):
    """Two independent computation routes disagree; indicates a bug."""


class NoConvergence(NbtraceError):
    """An iterative or adaptive computation hit its budget before converging."""


class SingularEndpoint(NbtraceError):
    """Pointwise density evaluation at a point where the density diverges."""


class PoleOnSupport(NbtraceError):
    """Transform evaluated at a point whose integrand has a pole on the support."""


class MissingDecay(NbtraceError):
    """A coefficient-tail operation needs a declared decay rate that is absent."""


class RadiusTooSmall(NbtraceError):
    """Taylor radius does not cover the interval [-2, 2]."""


class DivergentSeries(NbtraceError):
    """Coefficient decay too slow for the requested branching number."""
