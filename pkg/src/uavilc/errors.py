"""Exception hierarchy shared by the solver and simulation layers."""


class UavIlcError(Exception):
    """Base class for all domain errors raised by this package."""


class DegenerateGeometryError(UavIlcError):
    """Link geometry does not support the requested quantity (e.g. overhead pass)."""


class FeasibilityError(UavIlcError):
    """A frame plan violates one of the link constraints.

    ``constraint`` names the violated constraint ("C1".."C5"); ``frame``
    is the offending frame index when known.
    """

    def __init__(self, message, constraint=None, frame=None):
        super().__init__(message)
        self.constraint = constraint
        self.frame = frame


class InfeasibleLinkError(FeasibilityError):
    """No transmission duration can satisfy the SNR threshold on this link."""


class InfeasibleBudgetError(FeasibilityError):
    """The total power budget cannot cover the per-frame minimum powers."""


class NumericalConditioningError(UavIlcError):
    """A matrix solve fell below the conditioning threshold."""


class ResourceLimitError(UavIlcError):
    """A requested exhaustive search exceeds the configured budget."""


class ConfigError(UavIlcError):
    """Configuration file is malformed, has unknown keys, or invalid values."""
