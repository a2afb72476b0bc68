"""Desk-scale sharpness experiment for products of two nuclear operators.

Convolution by a bounded Carleman-type symbol is nuclear on C(T), yet the
eigenvalues of its square are the squared Fourier coefficients: summable,
but not s-summable for s < 1. Any factorization of the square through S_r
on Hilbert space puts the same nonzero eigenvalues into S_s with
1/s = 1/2 + 1/r, so s-summability fails for s < 1 exactly when r cannot go
below 2. ``sharpness_sweep`` reads that exponent off finite partial sums.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .carleman import carleman_symbol
from .config import DEFAULT, Config
from .linalg import Matrix, as_array, dft, eigh, hs_norm, trace_power
from .sequences import dyadic_checkpoints, growth_exponent_fit, lp_partial_profile, membership_verdict


def square_eigen_sequence(samples) -> np.ndarray:
    """Eigenvalues of ``T @ T`` for the circulant ``T`` of ``samples``, sorted by modulus.

    A circulant is diagonalized by the Fourier basis, so the eigenvalues are
    the squared forward DFT coefficients of the symbol.
    """
    f = np.asarray(samples, dtype=complex).ravel()
    lam = dft(f) ** 2
    return lam[np.argsort(-np.abs(lam), kind="stable")]


class TraceReport(NamedTuple):
    lhs: tuple[complex, ...]
    rhs: tuple[complex, ...]
    max_rel_error: float
    passed: bool


def rotation_trace_check(A, U, B, k_max: int = DEFAULT.k_max, config: Config = DEFAULT) -> TraceReport:
    """Compare ``tr((BUA)^k)`` with ``tr((UAB)^k)`` for ``k = 1..k_max``.

    Equal traces of all powers mean equal nonzero spectra with multiplicity.
    Errors are relative to the larger trace, floored at ``1e-6 ||BUA||_HS^k``
    so that traces cancelling to zero are judged on their natural scale.
    """
    a, u, b = as_array(A), as_array(U), as_array(B)
    if u.shape[0] != u.shape[1] or a.shape[0] != u.shape[1] or b.shape[1] != u.shape[0] \
            or b.shape[0] != a.shape[1]:
        raise ValueError(f"shapes A{a.shape} U{u.shape} B{b.shape} do not close a loop")
    if k_max < 1:
        raise ValueError("k_max must be positive")
    outer = b @ u @ a
    inner = u @ a @ b
    scale = hs_norm(outer)
    lhs, rhs, worst = [], [], 0.0
    for k in range(1, k_max + 1):
        x, y = trace_power(outer, k), trace_power(inner, k)
        lhs.append(x)
        rhs.append(y)
        denom = max(abs(x), abs(y), 1e-6 * scale**k)
        if denom > 0:
            worst = max(worst, abs(x - y) / denom)
    return TraceReport(tuple(lhs), tuple(rhs), worst, worst <= config.trace_rtol)


def _lambda_max(gram: np.ndarray, mu: np.ndarray):
    root = 1.0 / np.sqrt(mu)
    w, v = eigh(root[:, None] * gram * root[None, :])
    return w, v


def pi2_upper_bound(A, config: Config = DEFAULT) -> float:
    """Upper bound for the 2-summing norm of ``A: l_inf^n -> l_2^m``.

    Looks for a probability weight ``mu`` with ``A^H A <= c^2 diag(mu)``; the
    smallest such ``c`` is the Pietsch constant. Multiplicative updates
    ``mu_i <- mu_i (K^q_ii / mu_i)^(1/(q+1))``, with ``K = D^-1/2 A^H A D^-1/2``
    and the power ``q`` raised geometrically, drive ``mu`` towards the
    minimizer of the top eigenvalue of ``K``; the best weight found is then
    certified by bisection on ``c`` using the smallest eigenvalue of
    ``c^2 diag(mu) - A^H A``.

    The result is at least ``max(||A||_HS, ||A||_{inf->2})`` (both are lower
    bounds for the 2-summing norm) and at most
    ``min(sum_i ||a_i||, sqrt(n) ||A||_2)`` over the columns ``a_i``.
    """
    if isinstance(A, Matrix) and (A.domain_norm, A.codomain_norm) != ("linf", "l2"):
        raise ValueError("the Pietsch estimate needs an linf -> l2 operator")
    a = as_array(A)
    cols = np.linalg.norm(a, axis=0)
    support = cols > 0
    if not np.any(support):
        return 0.0
    a = a[:, support]
    cols = cols[support]
    gram = a.conj().T @ a
    n = gram.shape[0]

    best_lam, best_mu = math.inf, None
    for mu in (np.full(n, 1.0 / n), cols / cols.sum()):
        lam = _lambda_max(gram, mu)[0][-1]
        if lam < best_lam:
            best_lam, best_mu = lam, mu
    mu = best_mu.copy()
    iters = config.pi2_iterations
    for t in range(iters):
        w, v = _lambda_max(gram, mu)
        lam = w[-1]
        if lam < best_lam:
            best_lam, best_mu = lam, mu.copy()
        if lam <= 0:
            break
        q = config.pi2_max_power ** (t / max(iters - 1, 1))
        weights = np.clip(w / lam, 0.0, 1.0) ** q
        diag_kq = (np.abs(v) ** 2) @ weights
        mu = mu * np.maximum(diag_kq / mu, 1e-300) ** (1.0 / (q + 1.0))
        mu = np.maximum(mu / mu.sum(), 1e-300)

    mu = best_mu
    tol = 1e-14 * np.linalg.norm(gram)

    def feasible(c):
        return eigh(c * c * np.diag(mu) - gram)[0][0] >= -tol

    hi = math.sqrt(best_lam)
    while not feasible(hi):
        hi *= 1 + config.pi2_bisect_rtol
    lo = math.sqrt(np.max(np.diag(gram).real / mu))
    while hi - lo > config.pi2_bisect_rtol * hi:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


class SweepRow(NamedTuple):
    N: int
    beta: float
    exponent: float
    partial_sum: float
    slope: float
    verdict: str
    sup_norm: float
    inferred_r_lower: float


CSV_COLUMNS = list(SweepRow._fields)


@dataclass
class SweepReport:
    rows: list[SweepRow]
    inferred_r_lower: float
    degenerate: bool
    metadata: dict = field(default_factory=dict)

    def row(self, N: int, exponent: float) -> SweepRow:
        for r in self.rows:
            if r.N == N and math.isclose(r.exponent, exponent):
                return r
        raise KeyError((N, exponent))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for r in self.rows:
                writer.writerow([repr(x) if isinstance(x, float) else x for x in r])

    def write_metadata(self, path) -> None:
        meta = dict(self.metadata, inferred_r_lower=self.inferred_r_lower, degenerate=self.degenerate)
        with open(path, "w") as fh:
            json.dump(meta, fh, indent=2)


def r_from_s(s: float) -> float:
    """Schatten index r with 1/s = 1/2 + 1/r (inf when s = 2)."""
    inv = 1.0 / s - 0.5
    return 1.0 / inv if inv > 0 else math.inf


def sharpness_sweep(N_list: Sequence[int], beta: float = DEFAULT.beta,
                    s_list: Sequence[float] = (0.75, 0.9, 1.0), seed=None,
                    symbol: Callable[[int], np.ndarray] | None = None,
                    config: Config = DEFAULT) -> SweepReport:
    """Profile the spectrum of ``T T`` for growing truncations of the symbol.

    For each N the eigenvalue sequence is summed to the powers 1 and
    ``s_list`` over dyadic checkpoints ending at N. The smallest s whose
    profile reads ``bounded`` gives ``r_lower`` via 1/s = 1/2 + 1/r. No
    randomness is involved; ``seed`` is only recorded.

    ``symbol`` maps N to grid samples and defaults to the Carleman symbol.
    A symbol whose spectrum has fewer nonzero terms than the first
    checkpoint is flagged degenerate: every profile is trivially bounded.
    """
    N_list = [int(n) for n in N_list]
    if any(b <= a for a, b in zip(N_list, N_list[1:])):
        raise ValueError("N_list must be ascending")
    for s in s_list:
        if not 0 < s <= 1:
            raise ValueError(f"s values must lie in (0, 1], got {s}")
    exponents = sorted(set(float(s) for s in s_list) | {1.0})
    rows: list[SweepRow] = []
    r_lower, degenerate = math.nan, False
    for N in N_list:
        samples = symbol(N) if symbol is not None else \
            carleman_symbol(N, beta, config.oversample).grid_samples
        samples = np.asarray(samples, dtype=complex)
        lam = square_eigen_sequence(samples)
        sup = float(np.abs(samples).max())
        cps = dyadic_checkpoints(N, config.profile_octaves)
        nonzero = int(np.sum(np.abs(lam) > 1e-12 * max(np.abs(lam).max(), 1e-300)))
        degenerate = nonzero < cps[0] or nonzero < 3
        block = []
        for e in exponents:
            prof = lp_partial_profile(lam, e, cps)
            if prof.sums[0] > 0:
                slope = growth_exponent_fit(prof).slope
                verdict = membership_verdict(prof, config)
            else:
                slope, verdict = 0.0, "bounded"
            block.append((e, prof.sums[-1], slope, verdict))
        bounded = [e for e, _, _, v in block if v == "bounded" and e in s_list]
        r_lower = r_from_s(min(bounded)) if bounded else math.nan
        rows.extend(SweepRow(N, float(beta), e, S, slope, v, sup, r_lower) for e, S, slope, v in block)
    metadata = {
        "seed": seed,
        "thresholds": {k: v for k, v in asdict(config).items()
                       if k in ("bounded_slope", "power_slope", "log_ratio", "profile_octaves")},
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "N_list": N_list,
        "s_list": [float(s) for s in s_list],
    }
    return SweepReport(rows, r_lower, degenerate, metadata)
