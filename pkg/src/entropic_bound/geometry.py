"""Landau-Pollak constraint on the two maximum probabilities.

Saturation curve parameterization: ``P_A = cos^2(alpha)`` and
``P_B = cos^2(theta - alpha)`` with ``c = cos(theta)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .exceptions import InputDomainError, NoSaturatingPartnerError

__all__ = [
    "Overlap",
    "as_overlap",
    "safe_sqrt1m",
    "lp_lhs",
    "lp_satisfied",
    "saturating_partner",
    "saturating_partner_closed_form",
]

LP_TOL = 1e-12


@dataclass(frozen=True)
class Overlap:
    """Overlap ``c`` of two observables with the precomputed angle
    ``theta = arccos(c)``."""

    c: float
    theta: float = field(init=False, repr=False)

    def __post_init__(self):
        c = float(self.c)
        if not (0.0 < c <= 1.0):
            raise InputDomainError(f"overlap must lie in (0, 1], got {self.c!r}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "theta", math.acos(c))

    def check_dimension(self, N: int, tol: float = 1e-12) -> None:
        """Raise if ``c < 1/sqrt(N)``, impossible for an ``N``-level pair."""
        if self.c < 1.0 / math.sqrt(N) - tol:
            raise InputDomainError(
                f"overlap {self.c!r} is below 1/sqrt({N}) = {1 / math.sqrt(N)!r}"
            )


def as_overlap(ov) -> Overlap:
    """Accept either an :class:`Overlap` or a bare float."""
    return ov if isinstance(ov, Overlap) else Overlap(ov)


def safe_sqrt1m(P: float) -> float:
    """``sqrt(1 - P)``, clamped to 0 when round-off makes ``1 - P`` negative."""
    return math.sqrt(max(0.0, 1.0 - P))


def _check_prob(P: float, name: str) -> float:
    P = float(P)
    if not (0.0 <= P <= 1.0):
        raise InputDomainError(f"{name} must lie in [0, 1], got {P!r}")
    return P


def lp_lhs(P_A: float, P_B: float) -> float:
    """``arccos(sqrt(P_A)) + arccos(sqrt(P_B))`` in radians."""
    P_A = _check_prob(P_A, "P_A")
    P_B = _check_prob(P_B, "P_B")
    return math.acos(math.sqrt(P_A)) + math.acos(math.sqrt(P_B))


def lp_satisfied(P_A: float, P_B: float, ov) -> bool:
    """Whether the pair of maxima obeys the Landau-Pollak relation."""
    ov = as_overlap(ov)
    return lp_lhs(P_A, P_B) >= ov.theta - LP_TOL


def saturating_partner(P_A: float, ov) -> float:
    """The ``P_B`` for which the Landau-Pollak relation holds with equality.

    Requires ``c^2 <= P_A <= 1``; the result also lies in ``[c^2, 1]``.
    """
    ov = as_overlap(ov)
    P_A = _check_prob(P_A, "P_A")
    # 1e-15 slack absorbs round-off in c**2 itself
    if P_A < ov.c * ov.c - 1e-15:
        raise NoSaturatingPartnerError(
            f"P_A = {P_A!r} is below c^2 = {ov.c * ov.c!r}; saturation needs P_B > 1"
        )
    alpha = math.acos(min(1.0, math.sqrt(P_A)))
    if alpha > ov.theta:
        alpha = ov.theta
    return math.cos(ov.theta - alpha) ** 2


def saturating_partner_closed_form(P_A: float, ov) -> float:
    """Same as :func:`saturating_partner`, from the algebraic identity
    ``c = sqrt(P_A P_B) - sqrt((1 - P_A)(1 - P_B))``.

    Solving for ``sqrt(P_B)`` gives
    ``sqrt(P_B) = c sqrt(P_A) + sqrt(1 - c^2) sqrt(1 - P_A)``.
    """
    ov = as_overlap(ov)
    P_A = _check_prob(P_A, "P_A")
    if P_A < ov.c * ov.c - 1e-15:
        raise NoSaturatingPartnerError(f"P_A = {P_A!r} is below c^2")
    s = ov.c * math.sqrt(P_A) + math.sqrt(max(0.0, 1.0 - ov.c * ov.c)) * safe_sqrt1m(P_A)
    return min(1.0, s * s)
