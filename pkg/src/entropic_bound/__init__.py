"""Improved entropic uncertainty lower bound from the Landau-Pollak relation."""
from .bounds import (
    BoundBreakdown,
    Branch,
    KktCandidate,
    crossover_cstar,
    cstar,
    deutsch_bound,
    f_bound,
    g_bound,
    h_m_candidates,
    h_m_value,
    mu_bound,
    new_bound,
)
from .entropy import (
    MinEntropyProfile,
    ProbabilityVector,
    entropy_sum_functional,
    min_entropy_given_max,
    multiplicity_for,
    shannon_entropy,
)
from .exceptions import (
    InfeasibleMaximumError,
    InputDomainError,
    NoSaturatingPartnerError,
    SolverFailureError,
    UnreachableOverlapError,
    ValidityRangeError,
)
from .geometry import Overlap, lp_lhs, lp_satisfied, saturating_partner

__version__ = "0.1.0"
