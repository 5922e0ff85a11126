"""Shannon entropy and minimal-entropy distributions at fixed maximum.

All entropies are in nats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import InfeasibleMaximumError, InputDomainError

__all__ = [
    "ProbabilityVector",
    "MinEntropyProfile",
    "xlogx",
    "shannon_entropy",
    "multiplicity_for",
    "min_entropy_given_max",
    "profile_entropy",
    "entropy_sum_functional",
    "entropy_rows",
    "profile_entropy_array",
]

NEG_TOL = 1e-12
SUM_TOL = 1e-10
SNAP_TOL = 1e-12


def xlogx(x: float) -> float:
    """``x * ln(x)`` with ``0 * ln(0) = 0``."""
    if x <= 0.0:
        return 0.0
    return x * math.log(x)


@dataclass(frozen=True)
class ProbabilityVector:
    """A finite discrete distribution.

    Tiny negative round-off (down to ``-1e-12``) is clamped to zero; anything
    more negative, or a total mass off by more than ``1e-10``, is rejected.
    """

    entries: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.entries, dtype=float).ravel()
        if p.size < 1:
            raise InputDomainError("a distribution needs at least one entry")
        if not np.all(np.isfinite(p)):
            raise InputDomainError("distribution entries must be finite")
        if np.any(p < -NEG_TOL):
            raise InputDomainError(f"negative probability {p.min()!r}")
        p = np.where(p < 0.0, 0.0, p)
        total = p.sum()
        if abs(total - 1.0) > SUM_TOL:
            raise InputDomainError(f"probabilities sum to {total!r}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "entries", p)

    def __len__(self):
        return self.entries.size

    @property
    def max_prob(self) -> float:
        return float(self.entries.max())


def _as_pv(p) -> ProbabilityVector:
    return p if isinstance(p, ProbabilityVector) else ProbabilityVector(p)


def shannon_entropy(p) -> float:
    """Shannon entropy ``-sum p_i ln p_i`` of a distribution, in nats.

    ``p`` may be a :class:`ProbabilityVector` or any array-like that
    validates as one.
    """
    pv = _as_pv(p)
    q = pv.entries[pv.entries > 0.0]
    return float(-np.sum(q * np.log(q)))


def multiplicity_for(P: float) -> int:
    """Number ``M`` of copies of the maximum in the minimal-entropy shape.

    ``M = floor(1/P)``, with ``1/P`` snapped to the nearest integer when it
    is within ``1e-12`` of it, so ``P = 1/M`` maps to ``M`` and never to
    ``M - 1``.
    """
    if not (0.0 < P <= 1.0) or math.isnan(P):
        raise InputDomainError(f"maximum probability must lie in (0, 1], got {P!r}")
    inv = 1.0 / P
    nearest = round(inv)
    if abs(inv - nearest) <= SNAP_TOL * max(1.0, inv):
        return int(nearest)
    return int(math.floor(inv))


def profile_entropy(P: float, M: int) -> float:
    """``-M P ln P - (1 - M P) ln(1 - M P)``; the residual is clamped at 0."""
    rest = 1.0 - M * P
    if rest < 0.0:
        rest = 0.0
    return -M * xlogx(P) - xlogx(rest)


@dataclass(frozen=True)
class MinEntropyProfile:
    """Entropy-minimizing shape among length-``N`` distributions with max ``P``.

    The shape is ``M`` copies of ``P``, one residual entry ``1 - M P`` and
    zeros for the rest.  When ``M P = 1`` the residual is dropped.
    """

    max_prob: float
    multiplicity: int
    dimension: int
    entropy: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "entropy", profile_entropy(self.max_prob, self.multiplicity)
        )

    @property
    def residual(self) -> float:
        return max(0.0, 1.0 - self.multiplicity * self.max_prob)

    def distribution(self) -> ProbabilityVector:
        M, N = self.multiplicity, self.dimension
        p = np.zeros(N)
        p[:M] = self.max_prob
        if M < N:
            p[M] = self.residual
        return ProbabilityVector(p)


def min_entropy_given_max(P: float, N: int) -> MinEntropyProfile:
    """Minimal Shannon entropy over length-``N`` distributions whose largest
    entry equals ``P``.

    Raises
    ------
    InfeasibleMaximumError
        If ``P < 1/N``: the entries could not sum to one.
    """
    if int(N) != N or N < 1:
        raise InputDomainError(f"dimension must be a positive integer, got {N!r}")
    N = int(N)
    M = multiplicity_for(P)
    # the residual 1 - M P needs a slot of its own unless it vanishes
    if M > N or (M == N and 1.0 - M * P > SNAP_TOL):
        raise InfeasibleMaximumError(
            f"no distribution of length {N} has maximum {P!r} (need P >= 1/N)"
        )
    return MinEntropyProfile(max_prob=float(P), multiplicity=M, dimension=N)


def entropy_sum_functional(P_A: float, P_B: float) -> float:
    """Sum of the two minimal entropies at maxima ``P_A`` and ``P_B``.

    Dimension-free: the ambient dimension is assumed large enough to host
    both minimal shapes.
    """
    total = 0.0
    for P in (P_A, P_B):
        total += profile_entropy(P, multiplicity_for(P))
    return total


def entropy_rows(p: np.ndarray) -> np.ndarray:
    """Shannon entropy of each row of a 2-D array of distributions.

    No validation; meant for inner loops over already-normalized data.
    """
    p = np.asarray(p, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0.0, p * np.log(np.where(p > 0.0, p, 1.0)), 0.0)
    return -terms.sum(axis=-1)


def profile_entropy_array(P: np.ndarray) -> np.ndarray:
    """Vectorized minimal entropy at fixed maximum ``P`` (dimension-free)."""
    P = np.asarray(P, dtype=float)
    inv = 1.0 / P
    near = np.rint(inv)
    M = np.where(np.abs(inv - near) <= SNAP_TOL * np.maximum(1.0, inv), near, np.floor(inv))
    rest = np.clip(1.0 - M * P, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        t_rest = np.where(rest > 0.0, rest * np.log(np.where(rest > 0.0, rest, 1.0)), 0.0)
    return -M * P * np.log(P) - t_rest
