import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entropic_bound.entropy import (
    ProbabilityVector,
    entropy_sum_functional,
    min_entropy_given_max,
    multiplicity_for,
    profile_entropy,
    shannon_entropy,
)
from entropic_bound.exceptions import InfeasibleMaximumError, InputDomainError


def brute_min_entropy(P, N, step=1e-3):
    """Exhaustive minimum of the entropy over length-N distributions on a
    ``step`` lattice whose largest entry is exactly ``P`` (N in {3, 4})."""
    K = int(round(1 / step))
    k = int(round(P * K))
    rest = K - k
    free = np.arange(k + 1)
    if N == 3:
        a = free
        b = rest - a
        ok = (b >= 0) & (b <= k)
        m = np.stack([np.full(ok.sum(), k), a[ok], b[ok]], 1) / K
    elif N == 4:
        a, b = np.meshgrid(free, free, indexing="ij")
        a, b = a.ravel(), b.ravel()
        d = rest - a - b
        ok = (d >= 0) & (d <= k)
        m = np.stack([np.full(ok.sum(), k), a[ok], b[ok], d[ok]], 1) / K
    else:
        raise ValueError(N)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -np.where(m > 0, m * np.log(np.where(m > 0, m, 1)), 0).sum(1)
    return float(h.min())


@pytest.mark.parametrize(
    "p, expected",
    [
        ([0.25] * 4, math.log(4)),
        ([1.0, 0.0, 0.0], 0.0),
        ([0.5, 0.5], math.log(2)),
    ],
)
def test_shannon_entropy_examples(p, expected):
    assert shannon_entropy(p) == pytest.approx(expected, abs=1e-12)


def test_shannon_entropy_rejects_invalid():
    with pytest.raises(InputDomainError):
        shannon_entropy([0.6, 0.6])
    with pytest.raises(InputDomainError):
        shannon_entropy([1.1, -0.1])
    with pytest.raises(InputDomainError):
        ProbabilityVector([])


def test_tiny_negative_entries_are_clamped():
    pv = ProbabilityVector([1.0 + 5e-13, -5e-13])
    assert pv.entries[1] == 0.0
    assert shannon_entropy(pv) == pytest.approx(0.0, abs=1e-11)


@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=12).filter(lambda x: sum(x) > 0))
def test_shannon_entropy_range(raw):
    p = np.array(raw) / sum(raw)
    h = shannon_entropy(p)
    assert -1e-12 <= h <= math.log(len(p)) + 1e-12


@pytest.mark.parametrize("P, M", [(0.4, 2), (0.5, 2), (1.0, 1), (1 / 3, 3), (0.2, 5), (0.26, 3)])
def test_multiplicity_for(P, M):
    assert multiplicity_for(P) == M


@pytest.mark.parametrize("P", [0.0, -0.1, 1.0000001, float("nan")])
def test_multiplicity_for_domain(P):
    with pytest.raises(InputDomainError):
        multiplicity_for(P)


def test_min_entropy_deterministic():
    prof = min_entropy_given_max(1.0, 5)
    assert prof.entropy == 0.0
    np.testing.assert_array_equal(prof.distribution().entries, [1, 0, 0, 0, 0])


def test_min_entropy_p04_n4_matches_brute_force():
    prof = min_entropy_given_max(0.4, 4)
    np.testing.assert_allclose(prof.distribution().entries, [0.4, 0.4, 0.2, 0.0])
    # frozen from brute_min_entropy(0.4, 4) on the 1e-3 lattice
    assert prof.entropy == pytest.approx(1.0549201679861442, abs=1e-6)
    assert prof.entropy == pytest.approx(brute_min_entropy(0.4, 4), abs=1e-6)
    assert prof.entropy == pytest.approx(-0.8 * math.log(0.4) - 0.2 * math.log(0.2), abs=1e-12)


def test_min_entropy_uniform_forced():
    prof = min_entropy_given_max(1 / 3, 3)
    assert prof.multiplicity == 3
    assert len(prof.distribution()) == 3
    assert prof.entropy == pytest.approx(math.log(3), abs=1e-12)


def test_min_entropy_infeasible():
    with pytest.raises(InfeasibleMaximumError):
        min_entropy_given_max(0.2, 4)
    # M = 3 copies of 0.3 leave 0.1 with nowhere to go
    with pytest.raises(InfeasibleMaximumError):
        min_entropy_given_max(0.3, 3)


@pytest.mark.parametrize("P", [0.35, 0.45, 0.55, 0.7, 0.9])
@pytest.mark.parametrize("N", [3, 4])
def test_min_entropy_vs_lattice(P, N):
    assert min_entropy_given_max(P, N).entropy == pytest.approx(brute_min_entropy(P, N), abs=1e-6)


@given(st.floats(0.05, 1.0), st.integers(20, 40))
def test_explicit_distribution_matches_closed_form(P, N):
    prof = min_entropy_given_max(P, N)
    dist = prof.distribution()
    assert dist.max_prob == pytest.approx(P, abs=1e-15)
    assert shannon_entropy(dist) == pytest.approx(prof.entropy, abs=1e-12)


@settings(max_examples=50)
@given(st.floats(0.3, 0.99), st.integers(4, 8), st.integers(0, 2**32 - 1))
def test_min_entropy_beats_random_same_max(P, N, seed):
    rng = np.random.default_rng(seed)
    h_min = min_entropy_given_max(P, N).entropy
    for _ in range(200):
        q = _random_with_max(P, N, rng)
        assert h_min <= shannon_entropy(q) + 1e-9


def _random_with_max(P, N, rng):
    """Random length-N distribution with largest entry exactly P (needs P >= 1/N)."""
    rest = 1.0 - P
    while True:
        w = rng.dirichlet(np.ones(N - 1)) * rest
        if w.max() <= P:
            return np.append(P, w)


@pytest.mark.parametrize("M", [2, 3, 4])
def test_min_entropy_continuous_at_boundaries(M):
    P = 1.0 / M
    left = min_entropy_given_max(P - 1e-12, 10).entropy
    right = min_entropy_given_max(P + 1e-12, 10).entropy
    at = min_entropy_given_max(P, 10).entropy
    assert left == pytest.approx(at, abs=1e-9)
    assert right == pytest.approx(at, abs=1e-9)


def test_entropy_sum_functional_examples():
    assert entropy_sum_functional(1.0, 1.0) == 0.0
    assert entropy_sum_functional(0.5, 0.5) == pytest.approx(2 * math.log(2), abs=1e-12)


def test_entropy_sum_functional_derived():
    value = entropy_sum_functional(0.9, 0.6)
    assert value == pytest.approx(
        min_entropy_given_max(0.9, 4).entropy + min_entropy_given_max(0.6, 4).entropy, abs=1e-15
    )
    # frozen from lattice minimization of H(p) + H(q) with max p = 0.9, max q = 0.6
    assert value == pytest.approx(0.9980946404007047, abs=1e-6)
    assert value == pytest.approx(brute_min_entropy(0.9, 4) + brute_min_entropy(0.6, 4), abs=1e-6)


@given(st.floats(1e-3, 1.0), st.floats(1e-3, 1.0))
def test_entropy_sum_functional_symmetric(x, y):
    assert entropy_sum_functional(x, y) == entropy_sum_functional(y, x)


def test_profile_entropy_clamps_residual():
    assert profile_entropy(0.5, 2) == pytest.approx(math.log(2))
