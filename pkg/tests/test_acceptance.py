"""Exit criteria for the package; each test prints one PASS/FAIL line in
the terminal summary."""
import math
import time

import numpy as np
import pytest

from entropic_bound.bounds import (
    INV_SQRT2,
    crossover_cstar,
    cstar,
    f_bound,
    g_bound,
    h_m_value,
    mu_bound,
    new_bound,
)
from entropic_bound.entropy import min_entropy_given_max
from entropic_bound.exceptions import InfeasibleMaximumError
from entropic_bound.oracle import grid_min
from entropic_bound.quantum import (
    haar_random_pair,
    qubit_min_entropy_sum,
    verify_bound_mc,
)


def test_01_crossover(criterion):
    t0 = time.perf_counter()
    cs = crossover_cstar(1e-6)
    dt = time.perf_counter() - t0
    criterion("1 crossover c* in [0.832, 0.836], < 5 s", f"c* = {cs:.6f}, {dt:.2f} s")
    assert 0.832 <= cs <= 0.836
    assert dt < 5.0


def test_02_improvement_region(criterion):
    above = np.linspace(INV_SQRT2 + 1e-6, 1 - 1e-6, 200)
    below = np.linspace(1e-3, INV_SQRT2, 201)[:-1]
    gaps = [new_bound(c).final - mu_bound(c) for c in above]
    equal = [new_bound(c).final == mu_bound(c) for c in below]
    criterion("2 final > MU above 1/sqrt 2, final == MU below", f"min gap {min(gaps):.3e}")
    assert min(gaps) > 0.0
    assert all(equal)


def test_03_fig1_ordering(criterion):
    t0 = time.perf_counter()
    cs = cstar()
    lo = np.linspace(INV_SQRT2, cs, 102)[1:-1]
    hi = np.linspace(cs, 1.0, 102)[1:-1]
    absent_above = 0
    for c in lo:
        h1 = h_m_value(c, 1)
        assert h1 is not None
        assert h1 <= f_bound(c) + 1e-9
        assert h1 <= g_bound(c) + 1e-9
    for c in hi:
        h1 = h_m_value(c, 1)
        # no distinct root: the candidate set is empty and its minimum is +inf
        h1_val = math.inf if h1 is None else h1
        absent_above += h1 is None
        assert f_bound(c) <= h1_val + 1e-9
        assert f_bound(c) <= g_bound(c) + 1e-9
    dt = time.perf_counter() - t0
    criterion(
        "3 candidate ordering H1 <= F, G below c*; F <= H1 above, < 30 s",
        f"H1 absent at {absent_above}/100 points above c*, {dt:.1f} s",
    )
    assert dt < 30.0


def test_04_g_interpolates_mu(criterion):
    errs = [abs(g_bound(1 / math.sqrt(n)) - math.log(n)) for n in range(1, 11)]
    criterion("4 G(1/sqrt n) = ln n for n = 1..10 within 1e-12", f"max err {max(errs):.1e}")
    assert max(errs) <= 1e-12


def test_05_oracle_agreement(criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    cs = rng.uniform(INV_SQRT2, 1.0, 50)
    diffs = [abs(grid_min(c, 10_000).min_value - new_bound(c).final) for c in cs]
    dt = time.perf_counter() - t0
    criterion("5 grid oracle within 1e-3 of final on 50 c, < 60 s", f"max diff {max(diffs):.2e}, {dt:.1f} s")
    assert max(diffs) <= 1e-3
    assert dt < 60.0


def test_06_quantum_validity(criterion):
    t0 = time.perf_counter()
    violations = 0
    worst = math.inf
    worst_lp = math.inf
    for N in (2, 3, 4, 5):
        for k in range(20):
            seed = 1000 * N + k
            rep = verify_bound_mc(haar_random_pair(N, seed), 10_000, seed)
            violations += not rep.passed
            worst = min(worst, rep.min_bound_slack)
            worst_lp = min(worst_lp, rep.min_lp_slack)
    dt = time.perf_counter() - t0
    criterion(
        "6 Haar states obey the bound and LP, N = 2..5, < 5 min",
        f"{violations} violations, min slack {worst:.2e}, min LP slack {worst_lp:.2e}, {dt:.1f} s",
    )
    assert violations == 0
    assert worst >= -1e-9
    assert worst_lp >= -1e-12
    assert dt < 300.0


def test_07_qubit_optimality(criterion):
    t0 = time.perf_counter()
    gaps = []
    for c in np.linspace(INV_SQRT2, 1.0, 20):
        c = min(1.0, max(INV_SQRT2, c))
        gaps.append(qubit_min_entropy_sum(c, restarts=50, seed=7) - new_bound(c).final)
    dt = time.perf_counter() - t0
    criterion(
        "7 qubit minimum - bound in [-1e-9, 1e-3] on 20 c, < 60 s",
        f"gap range [{min(gaps):.1e}, {max(gaps):.1e}], {dt:.1f} s",
    )
    assert min(gaps) >= -1e-9
    assert max(gaps) <= 1e-3
    assert dt < 60.0


def test_08_incomparability(criterion):
    from entropic_bound.oracle import incomparability_witness

    w = incomparability_witness(0.5)
    found = w is not None and (
        w.mu_allowed_lp_forbidden is not None and w.lp_allowed_mu_forbidden is not None
    )
    criterion("8 MU/LP incomparability witnesses at c = 0.5")
    assert found
    a, b = w.mu_allowed_lp_forbidden, w.lp_allowed_mu_forbidden
    assert not a.lp_holds and a.mu_holds
    assert b.lp_holds and not b.mu_holds


def test_09_branch_continuity(criterion):
    cs = cstar()
    d1 = abs(mu_bound(INV_SQRT2) - h_m_value(INV_SQRT2 + 1e-7, 1))
    d2 = abs(f_bound(cs) - h_m_value(cs, 1))
    d3 = abs(new_bound(INV_SQRT2 - 1e-9).final - new_bound(INV_SQRT2 + 1e-9).final)
    d4 = abs(new_bound(cs - 1e-9).final - new_bound(cs + 1e-9).final)
    worst = max(d1, d2, d3, d4)
    criterion("9 branch values agree at 1/sqrt 2 and c* within 1e-4", f"max jump {worst:.1e}")
    assert worst <= 1e-4


def _random_with_max(P, N, n, rng):
    rest = 1.0 - P
    out = []
    while sum(len(x) for x in out) < n:
        w = rng.dirichlet(np.ones(N - 1), size=4 * n) * rest
        out.append(w[w.max(axis=1) <= P])
    w = np.concatenate(out)[:n]
    return np.hstack([np.full((n, 1), P), w])


def _entropies(p):
    with np.errstate(divide="ignore", invalid="ignore"):
        return -np.where(p > 0, p * np.log(np.where(p > 0, p, 1.0)), 0.0).sum(axis=1)


def test_10_fedorov_reduction(criterion):
    rng = np.random.default_rng(10)
    checked, infeasible = 0, []
    worst = math.inf
    for P in (0.3, 0.4, 0.55, 0.7, 0.9):
        for N in (3, 4, 6):
            if P < 1.0 / N:
                # no length-N distribution has this maximum
                with pytest.raises(InfeasibleMaximumError):
                    min_entropy_given_max(P, N)
                infeasible.append((P, N))
                continue
            h_min = min_entropy_given_max(P, N).entropy
            q = _random_with_max(P, N, 10_000, rng)
            worst = min(worst, float((_entropies(q) - h_min).min()))
            checked += 1
    criterion(
        "10 minimal-entropy shape beats 10^4 random same-max distributions",
        f"{checked} configs, min margin {worst:.2e}, infeasible {infeasible}",
    )
    assert worst >= -1e-9
