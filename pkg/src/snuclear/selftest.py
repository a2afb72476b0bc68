"""Quick invariant checks used by ``snuclear selftest``."""

from __future__ import annotations

import math

import numpy as np

from .carleman import carleman_symbol
from .experiments import pi2_upper_bound, rotation_trace_check, square_eigen_sequence
from .factorization import chain_product, factor_product, schatten_hoelder_check, verify_certificate
from .linalg import dft, schatten_norm, svd
from .operators import circulant_operator, random_nuclear
from .sequences import growth_exponent_fit, lp_partial_profile


def _svd_adjoint(rng):
    m = rng.standard_normal((7, 5)) + 1j * rng.standard_normal((7, 5))
    return np.allclose(svd(m), svd(m.conj().T), rtol=1e-10, atol=0)


def _schatten_monotone(rng):
    m = rng.standard_normal((6, 6))
    vals = [schatten_norm(m, p) for p in (0.5, 1, 2, 4, math.inf)]
    return all(a >= b for a, b in zip(vals, vals[1:]))


def _dft_roundtrip(rng):
    c = rng.standard_normal(33) + 1j * rng.standard_normal(33)
    return np.allclose(dft(dft(c), inverse=True), c, rtol=0, atol=1e-12 * np.abs(c).max())


def _circulant_spectrum(rng):
    f = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    t = circulant_operator(f).matrix.entries
    k = np.arange(16)
    vecs = np.exp(2j * np.pi * np.outer(k, k) / 16)
    return np.allclose(t @ vecs, vecs * dft(f), atol=1e-10)


def _rotation(rng):
    a, u, b = rng.standard_normal((4, 6)), rng.standard_normal((4, 4)), rng.standard_normal((6, 4))
    return rotation_trace_check(a, u, b, 5).passed


def _hoelder(rng):
    a, b = rng.standard_normal((8, 8)), rng.standard_normal((8, 8))
    return all(schatten_hoelder_check(a, p, b, q).passed for p, q in ((1, 1), (1, 2), (2, 2)))


def _factor_chain(rng):
    ops = [random_nuclear(9, 7, 0.5, 1.0, 5, 1, "linf", "l1"),
           random_nuclear(6, 9, 1.0, 2.0, 8, 2, "l1", "l2"),
           random_nuclear(5, 6, 2 / 3, 1.5, 4, 3, "l2", "linf")]
    return verify_certificate(factor_product(ops), chain_product(ops)).passed


def _pi2_diagonal(rng):
    d = rng.uniform(0.1, 1.0, 6)
    est = pi2_upper_bound(np.diag(d))
    return np.linalg.norm(d) <= est * (1 + 1e-12) <= np.linalg.norm(d) * (1 + 1e-3)


def _parseval(rng):
    sym = carleman_symbol(64)
    return math.isclose(np.mean(np.abs(sym.grid_samples) ** 2),
                        np.sum(np.abs(sym.coefficients) ** 2), rel_tol=1e-10)


def _square_spectrum(rng):
    sym = carleman_symbol(64)
    lam = square_eigen_sequence(sym.grid_samples)
    expected = np.sort(np.abs(sym.coefficients) ** 2)[::-1]
    return np.allclose(np.abs(lam[:64]), expected, rtol=1e-10)


def _profile_scale(rng):
    c = rng.uniform(0, 1, 256)
    g1 = lp_partial_profile(c, 1.5, [16, 64, 256])
    g2 = lp_partial_profile(3 * c, 1.5, [16, 64, 256])
    return abs(growth_exponent_fit(g1).slope - growth_exponent_fit(g2).slope) < 1e-12


CHECKS = {
    "svd adjoint invariance": _svd_adjoint,
    "schatten monotone in p": _schatten_monotone,
    "dft round trip": _dft_roundtrip,
    "circulant spectrum = dft": _circulant_spectrum,
    "trace rotation BUA/UAB": _rotation,
    "schatten hoelder": _hoelder,
    "chain certificate": _factor_chain,
    "pi2 diagonal exactness": _pi2_diagonal,
    "parseval on carleman grid": _parseval,
    "spectrum of TT = squared coefficients": _square_spectrum,
    "profile scale equivariance": _profile_scale,
}


def run_selftest(seed: int = 0) -> dict[str, bool]:
    rng = np.random.default_rng(seed)
    return {name: bool(check(rng)) for name, check in CHECKS.items()}
