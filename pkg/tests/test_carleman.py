import math

import numpy as np
import pytest

from snuclear.carleman import (carleman_coefficients, carleman_symbol, read_coefficients, sup_norm_estimate,
                               synthesize, write_coefficients)
from snuclear.sequences import dyadic_checkpoints, growth_exponent_fit, lp_partial_profile, membership_verdict

CHECKPOINTS = dyadic_checkpoints(2**14)


@pytest.fixture(scope="module")
def coeffs():
    return carleman_coefficients(2**14, 1.5)


def test_leading_modulus():
    c = carleman_coefficients(8, 1.5)
    assert abs(c[0]) == pytest.approx(2**-0.5 * math.log(2) ** -1.5, rel=1e-14)
    assert abs(c[0]) == pytest.approx(1.2254, abs=1e-4)
    assert c[0].imag == 0


def test_moduli_and_phases_match_formula():
    c = carleman_coefficients(64, 2.0)
    for n in range(64):
        assert abs(c[n]) == pytest.approx((n + 2) ** -0.5 * math.log(n + 2) ** -2.0, rel=1e-13)
        if n:
            k = n.bit_length() - 1
            expected = np.exp(1j * math.pi * (n - 2**k) ** 2 / 2**k)
            assert c[n] / abs(c[n]) == pytest.approx(expected, abs=1e-12)


def test_prefix_stable(coeffs):
    np.testing.assert_array_equal(carleman_coefficients(256), coeffs[:256])


@pytest.mark.parametrize("n, beta", [(4, 1.5), (12, 1.5), (64, 1.0), (64, 0.5)])
def test_rejects_bad_parameters(n, beta):
    with pytest.raises(ValueError):
        carleman_coefficients(n, beta)


def test_l2_sum_below_majorant(coeffs):
    n = np.arange(coeffs.size)
    majorant = np.sum(1.0 / ((n + 2) * np.log(n + 2) ** 3))
    assert np.sum(np.abs(coeffs) ** 2) <= majorant * (1 + 1e-12)


def test_l2_profile_bounded(coeffs):
    g = lp_partial_profile(coeffs, 2, CHECKPOINTS)
    assert membership_verdict(g) == "bounded"


def test_l15_profile_slope(coeffs):
    # direct power-sum oracle, independent of lp_partial_profile
    mags = np.abs(coeffs) ** 1.5
    sums = [sum(mags[:n].tolist()) for n in CHECKPOINTS]
    slope = np.polyfit(np.log(CHECKPOINTS), np.log(sums), 1)[0]
    fit = growth_exponent_fit(lp_partial_profile(coeffs, 1.5, CHECKPOINTS))
    assert fit.slope == pytest.approx(slope, rel=1e-9)
    # the log^-2.25 factor flattens the N^(1/4) growth at this scale
    assert fit.slope == pytest.approx(0.025489, abs=1e-6)
    assert membership_verdict(lp_partial_profile(coeffs, 1.5, CHECKPOINTS)) == "log-divergent"


@pytest.mark.xfail(strict=True, reason="pure n^-3/4 oracle ignores the log^-2.25 factor; measured 0.0255")
def test_l15_profile_reads_as_quarter_power(coeffs):
    g = lp_partial_profile(coeffs, 1.5, CHECKPOINTS)
    assert membership_verdict(g) == "power-divergent"
    assert growth_exponent_fit(g).slope == pytest.approx(0.25, abs=0.05)


@pytest.mark.parametrize("p", [
    1.0, 1.25, 1.5,
    pytest.param(1.75, marks=pytest.mark.xfail(
        strict=True, reason="slope 0.0058 at N <= 2^14 reads as bounded; log factor dominates")),
])
def test_sub_l2_divergence(coeffs, p):
    assert membership_verdict(lp_partial_profile(coeffs, p, CHECKPOINTS)) != "bounded"


class TestSynthesize:
    def test_constant(self):
        np.testing.assert_allclose(synthesize([1.0], 5), np.ones(5))

    def test_single_harmonic(self):
        np.testing.assert_allclose(synthesize([0, 1], 2), [1, 1j, -1, -1j], atol=1e-15)

    def test_matches_direct_sum(self):
        c = carleman_coefficients(16)
        t = np.arange(48)
        direct = np.array([np.sum(c * np.exp(2j * np.pi * np.arange(16) * tj / 48)) for tj in t])
        np.testing.assert_allclose(synthesize(c, 3), direct, atol=1e-12)

    def test_parseval(self):
        sym = carleman_symbol(1024)
        energy = sum(abs(z) ** 2 for z in sym.grid_samples.tolist()) / sym.grid_samples.size
        assert energy == pytest.approx(sum(abs(z) ** 2 for z in sym.coefficients.tolist()), rel=1e-10)

    def test_bad_oversample(self):
        with pytest.raises(ValueError):
            synthesize([1.0], 0)


class TestSupNorm:
    def test_constant(self):
        assert sup_norm_estimate(np.ones(8)) == 1

    def test_single_harmonic(self):
        assert sup_norm_estimate(synthesize([0, 0, 1], 4)) == pytest.approx(1.0)

    def test_empty(self):
        with pytest.raises(ValueError):
            sup_norm_estimate([])

    def test_stable_growth(self):
        ns = [2**k for k in range(8, 15)]
        sups = [carleman_symbol(n).sup_norm for n in ns]
        slope = np.polyfit(np.log(ns), np.log(sups), 1)[0]
        assert slope < 0.05


def test_coefficient_file_round_trip(tmp_path):
    c = carleman_coefficients(32)
    write_coefficients(tmp_path / "c.csv", c)
    assert (tmp_path / "c.csv").read_text().splitlines()[0] == "index,modulus,phase"
    np.testing.assert_allclose(read_coefficients(tmp_path / "c.csv"), c, rtol=1e-15, atol=1e-15)
