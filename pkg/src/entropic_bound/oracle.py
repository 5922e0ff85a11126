"""Brute-force checks of the constrained entropy-sum minimization.

Two oracles with different assumptions:

* :func:`grid_min` sweeps the Landau-Pollak saturation curve using the
  minimal-entropy reduction;
* :func:`sampled_min` samples full distributions from the flat Dirichlet
  measure and keeps the pairs that obey the Landau-Pollak relation.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bounds import mu_bound
from .entropy import (
    ProbabilityVector,
    entropy_rows,
    entropy_sum_functional,
    min_entropy_given_max,
    profile_entropy_array,
    shannon_entropy,
)
from .exceptions import InputDomainError
from .geometry import LP_TOL, as_overlap, lp_lhs

__all__ = [
    "GridOracleResult",
    "Witness",
    "IncomparabilityWitness",
    "grid_min",
    "sampled_min",
    "incomparability_witness",
]

SHARD_SIZE = 10_000


@dataclass(frozen=True)
class GridOracleResult:
    c: float
    min_value: float
    argmin_P_A: float
    argmin_P_B: float
    resolution: int


def _partner_array(P_A: np.ndarray, theta: float) -> np.ndarray:
    alpha = np.arccos(np.sqrt(np.clip(P_A, 0.0, 1.0)))
    return np.cos(theta - np.minimum(alpha, theta)) ** 2


def grid_min(ov, resolution: int = 10_000) -> GridOracleResult:
    """Minimum of the reduced entropy sum over a grid on the saturation curve.

    ``P_A`` runs over ``resolution`` uniform points of ``[c^2, 1]`` plus the
    symmetric point ``(1 + c)/2``; ``P_B`` is the saturating partner.
    """
    ov = as_overlap(ov)
    if resolution < 10:
        raise InputDomainError(f"resolution must be at least 10, got {resolution!r}")
    c2 = ov.c * ov.c
    P_A = np.append(np.linspace(c2, 1.0, int(resolution)), [(1.0 + ov.c) / 2.0, 1.0])
    P_B = _partner_array(P_A, ov.theta)
    values = profile_entropy_array(P_A) + profile_entropy_array(P_B)
    k = int(np.argmin(values))
    pa, pb = float(P_A[k]), float(P_B[k])
    return GridOracleResult(
        c=ov.c,
        min_value=entropy_sum_functional(pa, pb),
        argmin_P_A=pa,
        argmin_P_B=pb,
        resolution=int(resolution),
    )


def _lp_ok(P_A: np.ndarray, P_B: np.ndarray, theta: float) -> np.ndarray:
    lhs = np.arccos(np.sqrt(np.clip(P_A, 0.0, 1.0))) + np.arccos(
        np.sqrt(np.clip(P_B, 0.0, 1.0))
    )
    return lhs >= theta - LP_TOL


def _shard_min(theta: float, N: int, n: int, seed_seq: np.random.SeedSequence) -> float:
    rng = np.random.default_rng(seed_seq)
    best = math.inf
    need = n
    # a pathological c could reject almost everything; cap the work
    budget = 1000 * n
    while need > 0 and budget > 0:
        batch = min(max(need * 2, 64), SHARD_SIZE)
        budget -= batch
        p = rng.dirichlet(np.ones(N), size=batch)
        q = rng.dirichlet(np.ones(N), size=batch)
        ok = _lp_ok(p.max(axis=1), q.max(axis=1), theta)
        idx = np.flatnonzero(ok)[:need]
        if idx.size:
            vals = entropy_rows(p[idx]) + entropy_rows(q[idx])
            best = min(best, float(vals.min()))
        need -= idx.size
    return best


def sampled_min(ov, N: int, samples: int, seed: int, workers: int = 1) -> float:
    """Smallest ``H(p) + H(q)`` over random Landau-Pollak-feasible pairs.

    Draws ``samples`` feasible pairs of length-``N`` distributions (flat
    Dirichlet, rejection on the constraint) and returns the smallest entropy
    sum seen, or ``inf`` when ``samples == 0``.  The work is split into fixed
    shards, each with its own stream spawned from ``seed``, so the result
    does not depend on ``workers``.
    """
    ov = as_overlap(ov)
    if N < 2:
        raise InputDomainError(f"dimension must be at least 2, got {N!r}")
    if samples < 0:
        raise InputDomainError(f"samples must be non-negative, got {samples!r}")
    if samples == 0:
        return math.inf
    sizes = [SHARD_SIZE] * (samples // SHARD_SIZE)
    if samples % SHARD_SIZE:
        sizes.append(samples % SHARD_SIZE)
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = list(zip(sizes, streams))
    if workers <= 1:
        results = [_shard_min(ov.theta, N, n, s) for n, s in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda j: _shard_min(ov.theta, N, *j), jobs))
    return min(results)


@dataclass(frozen=True)
class Witness:
    """A pair of distributions with the quantities that certify it."""

    p: ProbabilityVector
    q: ProbabilityVector
    lp_lhs: float
    theta: float
    entropy_sum: float
    mu: float

    @property
    def lp_holds(self) -> bool:
        return self.lp_lhs >= self.theta - LP_TOL

    @property
    def mu_holds(self) -> bool:
        return self.entropy_sum >= self.mu


@dataclass(frozen=True)
class IncomparabilityWitness:
    mu_allowed_lp_forbidden: Witness | None
    lp_allowed_mu_forbidden: Witness | None


def _max_entropy_dist(P: float, N: int) -> np.ndarray:
    p = np.full(N, (1.0 - P) / (N - 1))
    p[0] = P
    return p


def incomparability_witness(
    ov, resolution: int = 1000, dim: int = 16
) -> IncomparabilityWitness | None:
    """Search for distributions separating the Maassen-Uffink and
    Landau-Pollak relations at overlap ``c``.

    Maxima ``(P_A, P_B)`` run over a ``resolution x resolution`` grid.  For
    an LP-forbidden pair the most spread-out length-``dim`` extension is
    tried against the MU bound; for an LP-allowed pair the minimal-entropy
    extension is tried.  Either witness may be ``None``; if both are, the
    result is ``None``.
    """
    ov = as_overlap(ov)
    if dim < 2:
        raise InputDomainError(f"dim must be at least 2, got {dim!r}")
    ov.check_dimension(dim)
    mu = mu_bound(ov)
    grid = np.linspace(1.0 / dim, 1.0, int(resolution))
    A, B = np.meshgrid(grid, grid, indexing="ij")
    lhs = np.arccos(np.sqrt(A)) + np.arccos(np.sqrt(B))
    lp_ok = lhs >= ov.theta - LP_TOL

    def spread_entropy(P):
        rest = (1.0 - P) / (dim - 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(rest > 0.0, (1.0 - P) * np.log(np.where(rest > 0, rest, 1.0)), 0.0)
            return -np.where(P > 0.0, P * np.log(P), 0.0) - t

    def build(pa, pb, p, q):
        p, q = ProbabilityVector(p), ProbabilityVector(q)
        return Witness(
            p=p, q=q, lp_lhs=lp_lhs(pa, pb), theta=ov.theta,
            entropy_sum=shannon_entropy(p) + shannon_entropy(q), mu=mu,
        )

    mu_only = None
    h_max = spread_entropy(A) + spread_entropy(B)
    # most decisive witness: largest smaller-of-the-two margins
    margin = np.where(
        ~lp_ok & (h_max >= mu), np.minimum(ov.theta - lhs, h_max - mu), -np.inf
    )
    i, j = np.unravel_index(np.argmax(margin), margin.shape)
    if np.isfinite(margin[i, j]):
        pa, pb = float(grid[i]), float(grid[j])
        w = build(pa, pb, _max_entropy_dist(pa, dim), _max_entropy_dist(pb, dim))
        if not w.lp_holds and w.mu_holds:
            mu_only = w

    lp_only = None
    h_min = profile_entropy_array(A) + profile_entropy_array(B)
    margin = np.where(
        lp_ok & (h_min < mu), np.minimum(lhs - ov.theta, mu - h_min), -np.inf
    )
    i, j = np.unravel_index(np.argmax(margin), margin.shape)
    if np.isfinite(margin[i, j]):
        pa, pb = float(grid[i]), float(grid[j])
        p = min_entropy_given_max(pa, dim).distribution().entries
        q = min_entropy_given_max(pb, dim).distribution().entries
        w = build(pa, pb, p, q)
        if w.lp_holds and not w.mu_holds:
            lp_only = w

    if mu_only is None and lp_only is None:
        return None
    return IncomparabilityWitness(mu_only, lp_only)
