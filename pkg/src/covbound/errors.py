"""Exception and warning types raised across the package."""


class CovboundError(Exception):
    """Base class for all package errors."""


class DomainError(CovboundError, ValueError):
    """Argument outside the domain of a function."""


class PoleError(DomainError):
    """Gamma function evaluated at a nonpositive integer."""


class LegendreIndexError(CovboundError, IndexError):
    """Legendre order exceeds degree (the function vanishes identically)."""


class NotInRMS(CovboundError, ValueError):
    """Point does not lie strictly inside the reduced Minkowski space."""


class GridTooCoarse(CovboundError):
    """Estimated finite-difference truncation error exceeds the tolerance."""


class GridMismatch(CovboundError, ValueError):
    """Grid functions live on different grids."""


class ConvergenceError(CovboundError):
    """Richardson error estimate exceeds the requested tolerance."""


class ImaginaryMass(CovboundError, ValueError):
    """Negative radicand in the total-energy formula."""


class ChartSingular(CovboundError, ValueError):
    """Direction sits on the antipode of the canonical-section chart."""


class OrbitCoverage(CovboundError, KeyError):
    """A required orbit direction is missing from a sampled bundle."""

    def __init__(self, direction, message=None):
        self.direction = tuple(float(v) for v in direction)
        super().__init__(message or f"orbit point {self.direction} not sampled")

    def __str__(self):
        return self.args[0]


class ConfigError(CovboundError, ValueError):
    """Invalid run configuration."""


class DivergenceWarning(RuntimeWarning):
    """Series evaluated outside its radius of convergence."""
