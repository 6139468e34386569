"""Exception taxonomy for the simulation engine."""


class SimulationError(Exception):
    """Base class for all engine errors."""


class ParameterError(SimulationError):
    """Invalid, inconsistent, or unknown physical parameters / config keys."""


class SingularityError(SimulationError):
    """The driven-cavity response has an (unphysical) pole at the requested point."""


class StabilityError(SimulationError):
    """A steady-state quantity was requested for a non-Hurwitz drift matrix."""


class ConvergenceError(SimulationError):
    """An iterative solver failed to reach its tolerance within its budget."""


class UnphysicalCovarianceError(SimulationError):
    """A covariance matrix failed a physicality check (garbage upstream state)."""
