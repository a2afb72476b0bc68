"""Dense complex linear algebra kernel.

Singular values come from a one-sided (Hestenes) Jacobi iteration and
Hermitian eigenpairs from a two-sided cyclic Jacobi iteration. Both sweep
disjoint column pairs of a round-robin tournament at once, so each round is
a handful of vectorized numpy operations.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, NamedTuple

import numpy as np

from .config import DEFAULT

NormTag = Literal["linf", "l1", "l2"]
NORM_TAGS = ("linf", "l1", "l2")

# dual of the tag a matrix row (functional) is measured in
DUAL_TAG = {"linf": "l1", "l1": "linf", "l2": "l2"}


@dataclass(frozen=True)
class Matrix:
    """Dense complex matrix between two finite-dimensional normed spaces.

    ``entries`` is stored as a read-only 2-D complex array; the norm tags
    say which of l_inf, l_1, l_2 the domain and codomain carry.
    """

    entries: np.ndarray
    domain_norm: NormTag = "l2"
    codomain_norm: NormTag = "l2"

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"matrix entries must be a nonempty 2-D array, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        for tag in (self.domain_norm, self.codomain_norm):
            if tag not in NORM_TAGS:
                raise ValueError(f"unknown norm tag {tag!r}")
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def retag(self, domain_norm: NormTag, codomain_norm: NormTag) -> Matrix:
        return Matrix(self.entries, domain_norm, codomain_norm)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix(self.entries @ other.entries, other.domain_norm, self.codomain_norm)


def as_array(m) -> np.ndarray:
    """Return the complex 2-D array behind a Matrix or array-like."""
    if isinstance(m, Matrix):
        return m.entries
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def hs_norm(m) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    return float(np.linalg.norm(as_array(m)))


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Rounds of disjoint index pairs covering every pair of range(n) once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        if ps:
            rounds.append((np.array(ps), np.array(qs)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _rotation(alpha, beta, gamma):
    """Jacobi rotation annihilating the off-diagonal of [[alpha, gamma], [conj(gamma), beta]].

    Returns (c, s, phase) with phase = gamma/|gamma|.
    """
    g = np.abs(gamma)
    phase = np.where(g > 0, gamma / np.where(g > 0, g, 1.0), 1.0)
    safe = np.where(g > 0, g, 1.0)
    zeta = (beta - alpha) / (2.0 * safe)
    sign = np.where(zeta >= 0, 1.0, -1.0)
    t = sign / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
    t = np.where(g > 0, t, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    return c, c * t, phase


def _pow2_exponent(a: np.ndarray) -> int:
    """Binary exponent of the largest entry; scaling by it is exact and avoids under/overflow."""
    top = float(np.abs(a).max()) if a.size else 0.0
    return math.frexp(top)[1] if top > 0 else 0


def _ldexp(a: np.ndarray, e: int) -> np.ndarray:
    # complex division by a subnormal overflows in numpy, so scale the parts separately
    return np.ldexp(a.real, e) + 1j * np.ldexp(a.imag, e)


def _one_sided_jacobi(w: np.ndarray, tol: float, max_sweeps: int):
    """Orthogonalize the columns of ``w`` in place; returns the accumulated V."""
    n = w.shape[1]
    v = np.eye(n, dtype=complex)
    rounds = _round_robin(n)
    # columns this small carry singular values far below any tolerance in use
    negligible = (1e-100 * np.linalg.norm(w)) ** 2
    for _ in range(max_sweeps):
        rotated = False
        for p, q in rounds:
            wp, wq = w[:, p], w[:, q]
            alpha = np.einsum("ij,ij->j", wp.conj(), wp).real
            beta = np.einsum("ij,ij->j", wq.conj(), wq).real
            gamma = np.einsum("ij,ij->j", wp.conj(), wq)
            active = (np.abs(gamma) > tol * np.sqrt(alpha) * np.sqrt(beta)) \
                & (np.minimum(alpha, beta) > negligible)
            if not np.any(active):
                continue
            rotated = True
            p, q = p[active], q[active]
            c, s, phase = _rotation(alpha[active], beta[active], gamma[active])
            for mat in (w, v):
                a, b = mat[:, p], mat[:, q] * phase.conj()
                mat[:, p] = c * a - s * b
                mat[:, q] = s * a + c * b
        if not rotated:
            return v
    warnings.warn("one-sided Jacobi did not reach the off-diagonal threshold", RuntimeWarning)
    return v


def svd_decompose(m, tol: float = DEFAULT.jacobi_tol, max_sweeps: int = DEFAULT.jacobi_max_sweeps):
    """Thin singular value decomposition ``M = U @ diag(s) @ Vh``.

    Parameters
    ----------
    m : Matrix or array_like
        Matrix of shape (rows, cols).

    Returns
    -------
    U : ndarray, shape (rows, k)
    s : ndarray, shape (k,)
        Singular values, nonincreasing, with k = min(rows, cols).
    Vh : ndarray, shape (k, cols)

    Columns of ``U`` belonging to zero singular values are zero.
    """
    a = as_array(m)
    transposed = a.shape[1] > a.shape[0]
    e = _pow2_exponent(a)
    w = _ldexp(a.conj().T if transposed else a, -e)
    v = _one_sided_jacobi(w, tol, max_sweeps)
    s = np.linalg.norm(w, axis=0)
    order = np.argsort(-s, kind="stable")
    s = s[order]
    w = w[:, order]
    v = v[:, order]
    u = np.zeros_like(w)
    nz = s > 0
    u[:, nz] = w[:, nz] / s[nz]
    s = np.ldexp(s, e)
    if transposed:
        return v, s, u.conj().T
    return u, s, v.conj().T


def svd(m) -> np.ndarray:
    """Singular values of ``m`` (Euclidean geometry), sorted nonincreasing."""
    return svd_decompose(m)[1]


def eigh(h, tol: float = DEFAULT.jacobi_tol, max_sweeps: int = DEFAULT.jacobi_max_sweeps):
    """Eigenpairs of a Hermitian matrix by cyclic two-sided Jacobi.

    Returns ``(w, V)`` with eigenvalues ``w`` ascending and ``h = V diag(w) V^H``.
    """
    k = as_array(h).copy()
    if k.shape[0] != k.shape[1]:
        raise ValueError("eigh needs a square matrix")
    k = 0.5 * (k + k.conj().T)
    e = _pow2_exponent(k)
    k = _ldexp(k, -e)
    n = k.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(k)
    rounds = _round_robin(n)
    for _ in range(max_sweeps):
        off = np.linalg.norm(k - np.diag(np.diag(k)))
        if off <= tol * scale:
            break
        for p, q in rounds:
            gamma = k[p, q]
            active = np.abs(gamma) > 0.1 * tol * scale
            if not np.any(active):
                continue
            p, q = p[active], q[active]
            c, s, phase = _rotation(k[p, p].real, k[q, q].real, gamma[active])
            # columns: K <- K J, rows: K <- J^H K, with J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
            for mat in (k, v):
                a, b = mat[:, p], mat[:, q] * phase.conj()
                mat[:, p] = c * a - s * b
                mat[:, q] = s * a + c * b
            a, b = k[p, :], k[q, :] * phase[:, None]
            k[p, :] = c[:, None] * a - s[:, None] * b
            k[q, :] = s[:, None] * a + c[:, None] * b
    else:
        warnings.warn("Hermitian Jacobi did not reach the off-diagonal threshold", RuntimeWarning)
    w = np.ldexp(np.diag(k).real, e)
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def schatten_norm(m, p: float) -> float:
    """Schatten quasi-norm ``(sum mu_n^p)^(1/p)``; ``p = inf`` gives the operator norm."""
    if not p > 0:
        raise ValueError(f"Schatten exponent must be positive, got {p}")
    mu = svd(m)
    if math.isinf(p):
        return float(mu[0])
    if mu[0] == 0:
        return 0.0
    # values at rounding level are zero (numerical rank as in numpy.linalg.matrix_rank);
    # for p < 1 they would otherwise add about sqrt(eps) to the norm
    top = mu[0]
    mu = mu[mu > max(np.shape(as_array(m))) * np.finfo(float).eps * top]
    # factor out the top value so tiny exponents do not underflow
    return float(top * math.fsum((mu / top) ** p) ** (1.0 / p))


class NormValue(NamedTuple):
    value: float
    exact: bool


def _linf_to_l2(a: np.ndarray, max_cols: int) -> NormValue:
    rows, cols = a.shape
    if rows == 1:
        return NormValue(float(np.abs(a).sum()), True)
    if cols == 1:
        return NormValue(float(np.linalg.norm(a)), True)
    if cols <= max_cols and np.all(a.imag == 0):
        # x and -x give the same norm, so fix the first sign
        signs = np.array(list(itertools.product((1.0, -1.0), repeat=cols - 1)))
        signs = np.hstack([np.ones((len(signs), 1)), signs])
        images = signs @ a.real.T
        return NormValue(float(np.sqrt(np.max(np.einsum("ij,ij->i", images, images)))), True)
    bound = min(hs_norm(a), math.sqrt(cols) * svd(a)[0])
    return NormValue(float(bound), False)


def operator_norm(m, pair: tuple[NormTag, NormTag] | None = None,
                  max_cols: int = DEFAULT.sign_enum_max_cols) -> NormValue:
    """Norm of ``m`` as a map between the tagged l_p spaces.

    ``pair`` is ``(domain, codomain)``; it defaults to the tags carried by a
    Matrix. Every pair is exact except ``linf -> l2`` (and its dual
    ``l2 -> l1``) on complex or wide matrices, where the returned value is
    the upper bound ``min(||M||_HS, sqrt(cols) ||M||_2)`` with ``exact=False``.
    """
    if pair is None:
        if not isinstance(m, Matrix):
            raise ValueError("a norm pair is required for untagged arrays")
        pair = (m.domain_norm, m.codomain_norm)
    a = as_array(m)
    absa = np.abs(a)
    if pair == ("linf", "linf"):
        return NormValue(float(absa.sum(axis=1).max()), True)
    if pair == ("l1", "l1"):
        return NormValue(float(absa.sum(axis=0).max()), True)
    if pair == ("l1", "linf"):
        return NormValue(float(absa.max()), True)
    if pair == ("l1", "l2"):
        return NormValue(float(np.linalg.norm(a, axis=0).max()), True)
    if pair == ("l2", "linf"):
        return NormValue(float(np.linalg.norm(a, axis=1).max()), True)
    if pair == ("l2", "l2"):
        return NormValue(float(svd(a)[0]), True)
    if pair == ("linf", "l2"):
        return _linf_to_l2(a, max_cols)
    if pair == ("l2", "l1"):
        return _linf_to_l2(a.conj().T, max_cols)
    raise ValueError(f"unsupported norm pair {pair}")


def trace_power(m, k: int) -> complex:
    """Trace of ``M^k`` by repeated multiplication."""
    a = as_array(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"trace_power needs a square matrix, got {a.shape}")
    if k < 1:
        raise ValueError("power must be a positive integer")
    p = a
    for _ in range(k - 1):
        p = p @ a
    return complex(np.trace(p))


def dft(c, inverse: bool = False) -> np.ndarray:
    """Discrete Fourier transform with the 1/N factor on the forward side.

    forward:  c_hat[k] = (1/N) sum_t c[t] exp(-2 pi i k t / N)
    inverse:  c[t]     =       sum_k c_hat[k] exp(+2 pi i k t / N)
    """
    c = np.asarray(c, dtype=complex)
    if c.ndim != 1 or c.size < 1:
        raise ValueError("dft needs a nonempty 1-D sequence")
    if not np.all(np.isfinite(c)):
        raise ValueError("sequence entries must be finite")
    if inverse:
        return np.fft.ifft(c) * c.size
    return np.fft.fft(c) / c.size
