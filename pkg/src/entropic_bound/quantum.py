"""Monte Carlo checks of the bound on actual quantum states.

The ``A`` basis is the computational basis and the ``B`` basis is given by
the columns of a unitary ``U``, so ``U[i, j] = <a_i|b_j>``.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .bounds import INV_SQRT2, new_bound
from .entropy import ProbabilityVector, entropy_rows, shannon_entropy
from .exceptions import InputDomainError, UnreachableOverlapError
from .geometry import Overlap

__all__ = [
    "PureState",
    "BasisPair",
    "VerificationReport",
    "born_probabilities",
    "overlap_of",
    "fourier_matrix",
    "haar_unitary",
    "haar_random_pair",
    "haar_random_states",
    "qubit_pair_with_overlap",
    "verify_bound_mc",
    "qubit_entropy_sum",
    "qubit_min_entropy_sum",
]

UNITARY_TOL = 1e-10
NORM_TOL = 1e-10
SHARD_SIZE = 10_000


@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        psi = np.asarray(self.amplitudes, dtype=complex).ravel()
        norm = float(np.vdot(psi, psi).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise InputDomainError(f"state has squared norm {norm!r}, not 1")
        psi.setflags(write=False)
        object.__setattr__(self, "amplitudes", psi)

    @property
    def dimension(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class BasisPair:
    """Two orthonormal bases through their transition matrix."""

    U: np.ndarray

    def __post_init__(self):
        U = np.array(self.U, dtype=complex)
        if U.ndim != 2 or U.shape[0] != U.shape[1]:
            raise InputDomainError(f"transition matrix must be square, got {U.shape}")
        err = np.abs(U @ U.conj().T - np.eye(U.shape[0])).max()
        if err > UNITARY_TOL:
            raise InputDomainError(f"transition matrix is not unitary (residual {err:.3g})")
        U.setflags(write=False)
        object.__setattr__(self, "U", U)

    @property
    def dimension(self) -> int:
        return self.U.shape[0]

    def unitarity_residual(self) -> float:
        return float(np.abs(self.U @ self.U.conj().T - np.eye(self.dimension)).max())

    def basis(self, side: str) -> np.ndarray:
        """Basis vectors as matrix columns, in the ``A`` coordinates."""
        if side == "A":
            return np.eye(self.dimension, dtype=complex)
        if side == "B":
            return self.U
        raise InputDomainError(f"side must be 'A' or 'B', got {side!r}")


def born_probabilities(state, basis) -> ProbabilityVector:
    """Outcome distribution ``|<basis_i|psi>|^2``.

    ``basis`` is a matrix whose columns are the basis vectors.
    """
    psi = state.amplitudes if isinstance(state, PureState) else PureState(state).amplitudes
    basis = np.asarray(basis, dtype=complex)
    if basis.shape != (psi.size, psi.size):
        raise InputDomainError(
            f"basis of shape {basis.shape} does not match state dimension {psi.size}"
        )
    p = np.abs(basis.conj().T @ psi) ** 2
    return ProbabilityVector(p / p.sum())


def overlap_of(pair: BasisPair) -> Overlap:
    """``c = max_ij |<a_i|b_j>|``, clipped to 1 against round-off."""
    return Overlap(min(1.0, float(np.abs(pair.U).max())))


def fourier_matrix(N: int) -> np.ndarray:
    k = np.arange(N)
    return np.exp(2j * np.pi * np.outer(k, k) / N) / math.sqrt(N)


def haar_unitary(N: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed ``N x N`` unitary: QR of a complex Ginibre matrix with
    the phases of ``diag(R)`` moved into ``Q``."""
    Z = (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) / math.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def haar_random_pair(N: int, seed: int) -> BasisPair:
    if N < 2:
        raise InputDomainError(f"dimension must be at least 2, got {N!r}")
    return BasisPair(haar_unitary(N, np.random.default_rng(seed)))


def haar_random_states(N: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` Haar-random unit vectors as rows."""
    Z = rng.standard_normal((count, N)) + 1j * rng.standard_normal((count, N))
    return Z / np.linalg.norm(Z, axis=1, keepdims=True)


def qubit_pair_with_overlap(c: float) -> BasisPair:
    """Real rotation ``[[c, s], [-s, c]]`` with ``s = sqrt(1 - c^2)``."""
    c = float(c)
    if not (INV_SQRT2 - 1e-15 <= c <= 1.0):
        raise UnreachableOverlapError(
            f"a qubit rotation has overlap >= 1/sqrt(2), got {c!r}"
        )
    s = math.sqrt(max(0.0, 1.0 - c * c))
    return BasisPair(np.array([[c, s], [-s, c]], dtype=complex))


@dataclass
class VerificationReport:
    c: float
    bound: float
    n_states: int
    min_entropy_sum: float
    min_bound_slack: float
    min_lp_slack: float
    passed: bool
    offending_state: PureState | None = None


def _check_shard(U, theta, bound, n, seed_seq):
    rng = np.random.default_rng(seed_seq)
    psi = haar_random_states(U.shape[0], n, rng)
    pa = np.abs(psi) ** 2
    pb = np.abs(psi @ U.conj()) ** 2
    hsum = entropy_rows(pa) + entropy_rows(pb)
    lhs = np.arccos(np.sqrt(np.clip(pa.max(axis=1), 0, 1))) + np.arccos(
        np.sqrt(np.clip(pb.max(axis=1), 0, 1))
    )
    lp_slack = lhs - theta
    bad = np.flatnonzero((hsum < bound - 1e-9) | (lp_slack < -1e-12))
    offender = psi[bad[0]] if bad.size else None
    return float(hsum.min()), float(lp_slack.min()), offender


def verify_bound_mc(pair: BasisPair, states: int, seed: int, workers: int = 1) -> VerificationReport:
    """Check the bound and the Landau-Pollak relation on Haar-random states.

    States are drawn in fixed shards with streams spawned from ``seed``, so
    the report does not depend on ``workers``.
    """
    if states < 1:
        raise InputDomainError(f"need at least one state, got {states!r}")
    ov = overlap_of(pair)
    bound = new_bound(ov).final
    sizes = [SHARD_SIZE] * (states // SHARD_SIZE)
    if states % SHARD_SIZE:
        sizes.append(states % SHARD_SIZE)
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(pair.U, ov.theta, bound, n, s) for n, s in zip(sizes, streams)]
    if workers <= 1:
        results = [_check_shard(*j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda j: _check_shard(*j), jobs))
    min_h = min(r[0] for r in results)
    min_lp = min(r[1] for r in results)
    offender = next((r[2] for r in results if r[2] is not None), None)
    return VerificationReport(
        c=ov.c, bound=bound, n_states=states, min_entropy_sum=min_h,
        min_bound_slack=min_h - bound, min_lp_slack=min_lp,
        passed=offender is None,
        offending_state=None if offender is None else PureState(offender),
    )


def qubit_entropy_sum(pair: BasisPair, x: float, phi: float) -> float:
    """``H(A) + H(B)`` for ``|psi> = (cos(x/2), e^{i phi} sin(x/2))``."""
    psi = np.array([math.cos(x / 2.0), np.exp(1j * phi) * math.sin(x / 2.0)])
    return shannon_entropy(born_probabilities(psi, pair.basis("A"))) + shannon_entropy(
        born_probabilities(psi, pair.basis("B"))
    )


def qubit_min_entropy_sum(c: float, restarts: int = 50, seed: int = 0) -> float:
    """Numerical minimum of ``H(A) + H(B)`` over pure qubit states.

    Multi-start Nelder-Mead over the Bloch angles ``(x, phi)``.
    """
    pair = qubit_pair_with_overlap(c)
    rng = np.random.default_rng(seed)
    U = pair.U

    def objective(v):
        x, phi = v
        psi = np.array([math.cos(x / 2.0), np.exp(1j * phi) * math.sin(x / 2.0)])
        pa = np.abs(psi) ** 2
        pb = np.abs(U.conj().T @ psi) ** 2
        return float(entropy_rows(np.stack([pa, pb])).sum())

    best = math.inf
    for _ in range(max(1, restarts)):
        x0 = [rng.uniform(0.0, math.pi), rng.uniform(0.0, 2.0 * math.pi)]
        res = minimize(
            objective, x0, method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 4000},
        )
        best = min(best, float(res.fun))
    return best
