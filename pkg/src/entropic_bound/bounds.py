"""Lower bounds on ``H(A) + H(B)`` as functions of the overlap ``c``.

Besides the classical Deutsch and Maassen-Uffink bounds this module
computes the three families of stationary points of the reduced entropy
sum along the Landau-Pollak saturation curve:

* ``F(c)``, the symmetric point ``P_A = P_B = (1 + c) / 2``;
* ``G(c)``, the boundary point ``P_A = 1``, ``P_B = c^2``;
* ``H_M(c)``, interior points with ``M_A = 1`` and ``M_B = M`` found by
  root finding on a transcendental equation in the angle ``alpha``.

:func:`new_bound` assembles the improved piecewise bound from them.
"""
from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass, field

import numpy as np

from .entropy import entropy_sum_functional, multiplicity_for, xlogx
from .exceptions import InputDomainError, SolverFailureError, ValidityRangeError
from .geometry import Overlap, as_overlap

__all__ = [
    "Branch",
    "KktCandidate",
    "BoundBreakdown",
    "INV_SQRT2",
    "deutsch_bound",
    "mu_bound",
    "f_bound",
    "g_bound",
    "f_candidate",
    "g_candidate",
    "transcendental_residual",
    "admissible_band",
    "h_m_candidates",
    "h_m_value",
    "crossover_cstar",
    "cstar",
    "new_bound",
]

INV_SQRT2 = 1.0 / math.sqrt(2.0)

SCAN_POINTS = 10_000
BISECT_TOL = 1e-13
BAND_SHRINK = 1e-9
SYMMETRIC_TOL = 1e-8
CSTAR_TOL = 1e-9
# overlaps down to 1/8, i.e. dimensions up to 64
MAX_DIAGNOSTIC_M = 64
# c within this distance of 1/sqrt(2) is treated as the boundary itself,
# where the MU and H1 branches coincide.
BOUNDARY_SNAP = 1e-12


class Branch(str, enum.Enum):
    EQUAL_P = "EQUAL_P"
    TRANSCENDENTAL_M = "TRANSCENDENTAL_M"
    BOUNDARY = "BOUNDARY"


@dataclass(frozen=True)
class KktCandidate:
    """A stationary point of the reduced entropy sum on the saturation curve."""

    P_A: float
    P_B: float
    M_A: int
    M_B: int
    alpha: float
    lam: float
    entropy_sum: float
    branch: Branch
    M: int | None = None
    # multiplier recomputed from the B side; equals lam at a stationary point
    lam_b: float = float("nan")


@dataclass(frozen=True)
class BoundBreakdown:
    c: float
    deutsch: float
    maassen_uffink: float
    f_val: float
    g_val: float
    h_m: list = field(default_factory=list)
    final: float = 0.0
    active_branch: str = "MU"

    @property
    def h1(self) -> float | None:
        for M, val in self.h_m:
            if M == 1:
                return val
        return None

    def candidate_values(self) -> list[float]:
        vals = [self.f_val, self.g_val]
        vals.extend(v for _, v in self.h_m if v is not None)
        return vals


def deutsch_bound(ov) -> float:
    """``-2 ln((1 + c) / 2)``."""
    c = as_overlap(ov).c
    return -2.0 * math.log((1.0 + c) / 2.0)


def mu_bound(ov) -> float:
    """Maassen-Uffink bound ``-2 ln c``."""
    c = as_overlap(ov).c
    return -2.0 * math.log(c)


def f_bound(ov) -> float:
    """``-(1+c) ln((1+c)/2) - (1-c) ln((1-c)/2)``.

    Also accepts ``c = 0`` (value ``2 ln 2``), which is outside the domain
    of :class:`Overlap` but where the formula is still finite.
    """
    c = ov.c if isinstance(ov, Overlap) else float(ov)
    if not (0.0 <= c <= 1.0):
        raise InputDomainError(f"overlap must lie in [0, 1], got {c!r}")
    hi = (1.0 + c) / 2.0
    lo = (1.0 - c) / 2.0
    return -2.0 * (xlogx(hi) + xlogx(lo))


def g_bound(ov) -> float:
    """Entropy sum at ``P_A = 1``, ``P_B = c^2``.

    ``-c^2 [1/c^2] ln c^2 - (1 - c^2 [1/c^2]) ln(1 - c^2 [1/c^2])`` where
    ``[x]`` is the integer part.
    """
    c = as_overlap(ov).c
    c2 = c * c
    n = multiplicity_for(c2)
    mass = c2 * n
    return -n * xlogx(c2) - xlogx(max(0.0, 1.0 - mass))


def _multiplier(P: float, M: int) -> float:
    # 2 M sqrt(P(1-P)) ln(P / (1 - M P))
    return 2.0 * M * math.sqrt(P * (1.0 - P)) * math.log(P / (1.0 - M * P))


def _multiplier_angle(angle: float, M: int) -> float:
    """:func:`_multiplier` at ``P = cos^2(angle)``, accurate as ``P -> 1``."""
    cos2 = math.cos(angle) ** 2
    if M == 1:
        return math.sin(2.0 * angle) * 2.0 * math.log(math.cos(angle) / math.sin(angle))
    return M * math.sin(2.0 * angle) * math.log(cos2 / (1.0 - M * cos2))


def f_candidate(ov) -> KktCandidate:
    ov = as_overlap(ov)
    P = (1.0 + ov.c) / 2.0
    lam = _multiplier(P, 1) if P < 1.0 else 0.0
    return KktCandidate(
        P_A=P, P_B=P, M_A=1, M_B=1, alpha=ov.theta / 2.0, lam=lam,
        entropy_sum=entropy_sum_functional(P, P), branch=Branch.EQUAL_P,
    )


def g_candidate(ov) -> KktCandidate:
    ov = as_overlap(ov)
    c2 = ov.c * ov.c
    return KktCandidate(
        P_A=1.0, P_B=c2, M_A=1, M_B=multiplicity_for(c2), alpha=0.0,
        lam=float("nan"), entropy_sum=entropy_sum_functional(1.0, c2),
        branch=Branch.BOUNDARY,
    )


def transcendental_residual(alpha, theta: float, M: int):
    """Stationarity residual along the saturation curve (vectorized).

    ``sin 2a ln((1 + cos 2a)/(1 - cos 2a))
    + M sin 2(a - t) ln((1 + cos 2(a - t)) / (2 (1 - M cos^2(a - t))))``

    The log arguments are evaluated as ``cot^2 a`` and
    ``cos^2(a - t) / (1 - M cos^2(a - t))`` to stay accurate near ``a = 0``.
    """
    a = np.asarray(alpha, dtype=float)
    b = a - theta
    ca, sa = np.cos(a), np.sin(a)
    cb2 = np.cos(b) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        first = np.sin(2.0 * a) * 2.0 * np.log(ca / sa)
        first = np.where(sa == 0.0, 0.0, first)
        second = M * np.sin(2.0 * b) * np.log(cb2 / (1.0 - M * cb2))
    return first + second


def admissible_band(ov, M: int) -> tuple[float, float] | None:
    """Open ``alpha`` interval where ``P_A in [1/2, 1)`` and
    ``P_B in (1/(M+1), 1/M)``, or ``None`` if it is empty."""
    ov = as_overlap(ov)
    th = ov.theta
    lo = th - math.acos(1.0 / math.sqrt(M + 1))
    hi = min(math.pi / 4.0, th)
    if M > 1:
        hi = min(hi, th - math.acos(1.0 / math.sqrt(M)))
    if lo < 0.0:
        # only the P_A -> 1 edge is active and it is regular; a tiny margin
        # keeps roots close to the boundary point reachable
        lo = 1e-300
    else:
        lo += BAND_SHRINK
    if M > 1 or hi < th:
        hi -= BAND_SHRINK
    else:
        hi = math.nextafter(hi, 0.0)
    if not hi > lo:
        return None
    return lo, hi


def _bisect(fun, a: float, b: float, fa: float) -> float:
    while b - a > BISECT_TOL:
        m = 0.5 * (a + b)
        fm = float(fun(m))
        if fm == 0.0:
            return m
        if (fm < 0.0) == (fa < 0.0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _check_m(ov: Overlap, M: int) -> int:
    if int(M) != M or M < 1:
        raise InputDomainError(f"M must be a positive integer, got {M!r}")
    M = int(M)
    if ov.c > 1.0 / math.sqrt(M) + 1e-15:
        raise ValidityRangeError(
            f"H_{M} is only defined for c <= 1/sqrt({M}), got c = {ov.c!r}"
        )
    return M


def h_m_candidates(ov, M: int) -> list[KktCandidate]:
    """All interior stationary points with ``M_A = 1``, ``M_B = M`` and
    ``P_A != P_B``.

    The admissible band is scanned for sign changes of
    :func:`transcendental_residual` and each bracket is bisected.  Roots
    reproducing the symmetric point are discarded.
    """
    ov = as_overlap(ov)
    M = _check_m(ov, M)
    band = admissible_band(ov, M)
    if band is None:
        return []
    th = ov.theta
    grid = np.linspace(band[0], band[1], SCAN_POINTS)
    res = transcendental_residual(grid, th, M)
    fun = lambda a: transcendental_residual(a, th, M)  # noqa: E731

    finite = np.isfinite(res)
    exact = np.flatnonzero(finite & (res == 0.0))
    brackets = np.flatnonzero(
        finite[:-1] & finite[1:] & (res[:-1] * res[1:] < 0.0)
    )
    roots = [float(grid[i]) for i in exact]
    roots.extend(_bisect(fun, grid[i], grid[i + 1], res[i]) for i in brackets)

    out = []
    for alpha in roots:
        P_A = math.cos(alpha) ** 2
        P_B = math.cos(th - alpha) ** 2
        if abs(P_A - P_B) < SYMMETRIC_TOL:
            continue
        M_B = multiplicity_for(P_B)
        if multiplicity_for(P_A) != 1 or M_B != M:
            continue
        out.append(KktCandidate(
            P_A=P_A, P_B=P_B, M_A=1, M_B=M, alpha=float(alpha),
            lam=_multiplier_angle(alpha, 1),
            entropy_sum=entropy_sum_functional(P_A, P_B),
            branch=Branch.TRANSCENDENTAL_M, M=M,
            lam_b=_multiplier_angle(th - alpha, M),
        ))
    return out


def h_m_value(ov, M: int) -> float | None:
    """Smallest entropy sum among :func:`h_m_candidates`, or ``None``."""
    cands = h_m_candidates(ov, M)
    if not cands:
        return None
    return min(k.entropy_sum for k in cands)


def _f_minus_h1(c: float) -> float:
    # F is the smaller candidate wherever H1 has no distinct root
    h1 = h_m_value(c, 1)
    if h1 is None:
        return 0.0
    return f_bound(c) - h1


def crossover_cstar(tol: float = 1e-6) -> float:
    """Overlap above which ``F(c)`` replaces ``H_1(c)`` as the bound.

    Bisects on the sign of ``F - H_1`` over ``(1/sqrt 2, 1)``.  ``H_1`` stays
    below ``F`` until its two roots merge into the symmetric point, after
    which it has no distinct root; that side counts as ``F - H_1 <= 0``.
    The returned value is the last overlap at which ``H_1 < F`` was seen.
    """
    if not (tol > 0.0) or not math.isfinite(tol):
        raise InputDomainError(f"tolerance must be positive, got {tol!r}")
    lo, hi = INV_SQRT2 + 1e-3, 1.0 - 1e-3
    if not (_f_minus_h1(lo) > 0.0) or _f_minus_h1(hi) > 0.0:
        raise SolverFailureError("F - H_1 does not change sign on (1/sqrt 2, 1)")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _f_minus_h1(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return lo


_cstar_lock = threading.Lock()
_cstar_value: float | None = None


def cstar() -> float:
    """Crossover overlap at tolerance ``1e-9``, computed once per process."""
    global _cstar_value
    if _cstar_value is None:
        with _cstar_lock:
            if _cstar_value is None:
                _cstar_value = crossover_cstar(CSTAR_TOL)
    return _cstar_value


def new_bound(ov, max_m: int = MAX_DIAGNOSTIC_M) -> BoundBreakdown:
    """Improved lower bound on ``H(A) + H(B)`` with all candidate values.

    ``-2 ln c`` up to ``c = 1/sqrt 2``, then ``H_1(c)`` up to the crossover
    and ``F(c)`` above it.  The diagnostic ``H_M`` values are listed for
    ``M = 1 .. min(floor(1/c^2), max_m)``; none of them with ``M >= 2`` can
    be selected.
    """
    ov = as_overlap(ov)
    c = ov.c
    c2 = c * c
    n_max = min(multiplicity_for(c2), max_m)
    h_m = []
    for M in range(1, n_max + 1):
        if c > 1.0 / math.sqrt(M):
            # round-off at c = 1/sqrt(M)
            continue
        h_m.append((M, h_m_value(ov, M)))
    mu = mu_bound(ov)
    f_val = f_bound(ov)
    h1 = next((v for M, v in h_m if M == 1), None)

    if c <= INV_SQRT2 + BOUNDARY_SNAP:
        final, branch = mu, "MU"
    elif c >= cstar():
        final, branch = f_val, "F"
    else:
        if h1 is None:
            raise SolverFailureError(f"no H_1 root found at c = {c!r}")
        final, branch = h1, "H1"
    return BoundBreakdown(
        c=c, deutsch=deutsch_bound(ov), maassen_uffink=mu, f_val=f_val,
        g_val=g_bound(ov), h_m=h_m, final=final, active_branch=branch,
    )
