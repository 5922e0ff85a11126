"""Exception hierarchy shared by every module of the package."""


class InputDomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class InfeasibleMaximumError(InputDomainError):
    """No distribution of the requested length has the requested maximum."""


class NoSaturatingPartnerError(InputDomainError):
    """Saturating the Landau-Pollak relation would need a probability above one."""


class ValidityRangeError(InputDomainError):
    """A multiplicity ``M`` was requested for an overlap with ``c > 1/sqrt(M)``."""


class UnreachableOverlapError(InputDomainError):
    """A 2x2 rotation cannot have an overlap below ``1/sqrt(2)``."""


class SolverFailureError(RuntimeError):
    """A root finder could not bracket a root that must exist."""
