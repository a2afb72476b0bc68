"""Acceptance gate. Each test is one criterion; conftest prints a PASS/FAIL line for each."""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from snuclear.carleman import carleman_coefficients, carleman_symbol
from snuclear.experiments import pi2_upper_bound, rotation_trace_check, sharpness_sweep
from snuclear.factorization import (chain_product, compose_exponent, factor_product, schatten_hoelder_check,
                                    verify_certificate)
from snuclear.linalg import hs_norm, operator_norm, schatten_norm
from snuclear.operators import nu_s_hilbert_exact, random_nuclear
from snuclear.sequences import dyadic_checkpoints, growth_exponent_fit, lp_partial_profile, membership_verdict

TAGS = ("linf", "l1", "l2")
S_CHOICES = (0.5, 2 / 3, 1.0)
DYADIC_8_14 = [2**k for k in range(8, 15)]


def check_all(failures, elapsed, limit):
    if elapsed >= limit:
        failures.append(f"runtime {elapsed:.2f} s >= {limit} s")
    assert not failures, "; ".join(failures)


def exact_inv_r(s_list):
    return float(sum(1 / Fraction(s) for s in s_list) - Fraction(len(s_list) + 1, 2))


@pytest.mark.criterion(1, "exponent formula")
def test_exponent_formula():
    t0 = time.perf_counter()
    failures = []
    if compose_exponent([1, 1]).r != 2:
        failures.append("(1, 1) does not give r = 2")
    if not math.isinf(compose_exponent([1]).r):
        failures.append("(1) does not give r = inf")
    rng = np.random.default_rng(1)
    for s, q in rng.uniform(0.1, 1.0, size=(20, 2)):
        got = compose_exponent([s, q]).inv_r
        if abs(got - exact_inv_r([s, q])) > 1e-14:
            failures.append(f"(s, q) = ({s}, {q}): {got} vs {exact_inv_r([s, q])}")
    check_all(failures, time.perf_counter() - t0, 1)


def seeded_chain(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 4))
    dims = rng.integers(1, 65, size=n + 1)
    tags = rng.choice(TAGS, size=n + 1)
    chain = []
    for k in range(n):
        s = S_CHOICES[int(rng.integers(3))]
        chain.append(random_nuclear(int(dims[k + 1]), int(dims[k]), s, float(rng.uniform(0.2, 3.0)),
                                    int(rng.integers(1, 21)), int(rng.integers(2**31)), str(tags[k]),
                                    str(tags[k + 1]), bool(rng.integers(2))))
    return chain


@pytest.mark.criterion(2, "certificate suite on 50 chains")
def test_certificate_suite():
    t0 = time.perf_counter()
    failures = []
    for seed in range(50):
        chain = seeded_chain(seed)
        cert = factor_product(chain)
        report = verify_certificate(cert, chain_product(chain))
        if not report.residual <= 1e-8:
            failures.append(f"seed {seed}: residual {report.residual:.2e}")
        if not report.gamma_value <= math.prod(t.nu_bound for t in chain) * (1 + 1e-9):
            failures.append(f"seed {seed}: gamma {report.gamma_value} above nu product")
    check_all(failures, time.perf_counter() - t0, 60)


@pytest.mark.criterion(3, "Hilbert consistency")
def test_hilbert_consistency():
    t0 = time.perf_counter()
    failures = []
    rng = np.random.default_rng(3)
    for seed in range(30):
        s = S_CHOICES[seed % 3]
        rows, cols = (int(x) for x in rng.integers(1, 17, size=2))
        op = random_nuclear(rows, cols, s, float(rng.uniform(0.5, 2)), int(rng.integers(1, 20)), seed,
                            complex_entries=bool(seed % 2))
        cert = factor_product([op])
        sigma_t = schatten_norm(op.matrix, cert.budget.r)
        if not cert.gamma_value >= sigma_t - 1e-9:
            failures.append(f"seed {seed}: gamma {cert.gamma_value} < sigma_r(T) {sigma_t}")
        exact, direct = nu_s_hilbert_exact(op.matrix, s), schatten_norm(op.matrix, s)
        if abs(exact - direct) > 1e-10:
            failures.append(f"seed {seed}: nu_s {exact} vs Schatten {direct}")
    check_all(failures, time.perf_counter() - t0, 5)


@pytest.mark.criterion(4, "Carleman surrogate")
def test_carleman_surrogate():
    t0 = time.perf_counter()
    failures = []
    c = carleman_coefficients(DYADIC_8_14[-1], 1.5)
    l2 = lp_partial_profile(c, 2, DYADIC_8_14)
    slope2 = growth_exponent_fit(l2).slope
    if membership_verdict(l2) != "bounded" or not slope2 < 0.02:
        failures.append(f"l2 slope {slope2:.4f} not bounded")
    for p in (1, 1.5):
        slope = growth_exponent_fit(lp_partial_profile(c, p, DYADIC_8_14)).slope
        if not slope >= 0.05:
            failures.append(f"l{p:g} slope {slope:.4f} < 0.05")
    sups = [carleman_symbol(n, 1.5).sup_norm for n in DYADIC_8_14]
    growth = np.polyfit(np.log(DYADIC_8_14), np.log(sups), 1)[0]
    if not growth < 0.05:
        failures.append(f"sup-norm growth {growth:.4f} >= 0.05")
    check_all(failures, time.perf_counter() - t0, 30)


@pytest.mark.criterion(5, "sharpness sweep")
def test_sharpness_sweep():
    t0 = time.perf_counter()
    failures = []
    report = sharpness_sweep([2**14], beta=1.5, s_list=(0.75, 0.9, 1.0), seed=0)
    l1, l09 = report.row(2**14, 1.0), report.row(2**14, 0.9)
    if not l1.slope < 0.02:
        failures.append(f"l1 slope {l1.slope:.4f} >= 0.02")
    if not l09.slope >= 0.05:
        failures.append(f"l0.9 slope {l09.slope:.4f} < 0.05")
    if report.inferred_r_lower != 2:
        failures.append(f"r_lower {report.inferred_r_lower:.4f} != 2")
    check_all(failures, time.perf_counter() - t0, 30)


@pytest.mark.criterion(6, "rotation and composition identities")
def test_rotation_and_hoelder():
    t0 = time.perf_counter()
    failures = []
    rng = np.random.default_rng(6)
    for i in range(100):
        h, m = (int(x) for x in rng.integers(1, 13, size=2))
        a = rng.standard_normal((h, m)) + 1j * rng.standard_normal((h, m))
        u = rng.standard_normal((h, h)) + 1j * rng.standard_normal((h, h))
        b = rng.standard_normal((m, h)) + 1j * rng.standard_normal((m, h))
        rep = rotation_trace_check(a, u, b, k_max=5)
        if not rep.max_rel_error <= 1e-9:
            failures.append(f"triple {i}: trace error {rep.max_rel_error:.2e}")
    for p, q in ((1, 1), (1, 2), (2, 2)):
        for i in range(100):
            k, l, n = (int(x) for x in rng.integers(1, 11, size=3))
            if not schatten_hoelder_check(rng.standard_normal((k, l)), p, rng.standard_normal((l, n)), q).passed:
                failures.append(f"Hoelder ({p}, {q}) pair {i}")
    check_all(failures, time.perf_counter() - t0, 30)


@pytest.mark.criterion(7, "Pietsch estimator on diagonals")
def test_pi2_estimator():
    t0 = time.perf_counter()
    failures = []
    rng = np.random.default_rng(7)
    for i in range(20):
        n = int(rng.integers(1, 13))
        d = rng.uniform(0.05, 3.0, n) * rng.choice([-1.0, 1.0], n)
        a = np.diag(d)
        est = pi2_upper_bound(a)
        exact = float(np.linalg.norm(d))
        if abs(est - exact) > 1e-3 * exact:
            failures.append(f"diagonal {i}: {est} vs {exact}")
        lower = operator_norm(a, ("linf", "l2")).value
        if not lower * (1 - 1e-12) <= est <= hs_norm(a) * (1 + 1e-3):
            failures.append(f"diagonal {i}: {est} outside [{lower}, {hs_norm(a)}]")
    check_all(failures, time.perf_counter() - t0, 10)
