"""Marked operators: matrices carrying an explicit s-nuclear representation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DUAL_TAG, Matrix, NormTag, schatten_norm, svd_decompose


def vector_norms(rows: np.ndarray, tag: NormTag) -> np.ndarray:
    """Norm of every row of ``rows`` in the l_p space named by ``tag``."""
    a = np.abs(rows)
    if tag == "linf":
        return a.max(axis=1)
    if tag == "l1":
        return a.sum(axis=1)
    return np.sqrt((a * a).sum(axis=1))


def _quasi_norm(values: np.ndarray, s: float) -> float:
    """``(sum v^s)^(1/s)`` for nonnegative ``v``, scaled against the largest entry."""
    if values.size == 0:
        return 0.0
    top = float(values.max())
    if top == 0:
        return 0.0
    return top * math.fsum((values / top) ** s) ** (1.0 / s)


def _check_s(s: float) -> None:
    if not 0 < s <= 1:
        raise ValueError(f"nuclear exponent must lie in (0, 1], got {s}")


@dataclass(frozen=True)
class NuclearRep:
    """Finite representation ``T x = sum_k <x'_k, x> y_k``.

    ``functionals[k]`` is ``x'_k`` (a row, measured in the dual of
    ``domain_norm``) and ``vectors[k]`` is ``y_k`` (measured in
    ``codomain_norm``). Terms with a zero factor are dropped.
    """

    functionals: np.ndarray
    vectors: np.ndarray
    s: float
    domain_norm: NormTag = "l2"
    codomain_norm: NormTag = "l2"

    def __post_init__(self):
        _check_s(self.s)
        xs = np.atleast_2d(np.array(self.functionals, dtype=complex))
        ys = np.atleast_2d(np.array(self.vectors, dtype=complex))
        if xs.shape[0] != ys.shape[0]:
            raise ValueError("functionals and vectors must come in pairs")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise ValueError("representation terms must be finite")
        keep = (np.abs(xs).max(axis=1) > 0) & (np.abs(ys).max(axis=1) > 0)
        xs, ys = xs[keep], ys[keep]
        xs.flags.writeable = False
        ys.flags.writeable = False
        object.__setattr__(self, "functionals", xs)
        object.__setattr__(self, "vectors", ys)

    def __len__(self):
        return self.functionals.shape[0]

    @property
    def functional_norms(self) -> np.ndarray:
        return vector_norms(self.functionals, DUAL_TAG[self.domain_norm])

    @property
    def vector_norms(self) -> np.ndarray:
        return vector_norms(self.vectors, self.codomain_norm)

    def matrix(self) -> Matrix:
        return Matrix(self.vectors.T @ self.functionals, self.domain_norm, self.codomain_norm)


def nu_s_from_rep(rep: NuclearRep) -> float:
    """Upper certificate ``(sum ||x'_k||^s ||y_k||^s)^(1/s)`` for the s-nuclear quasi-norm."""
    _check_s(rep.s)
    return _quasi_norm(rep.functional_norms * rep.vector_norms, rep.s)


@dataclass(frozen=True)
class MarkedOperator:
    matrix: Matrix
    rep: NuclearRep
    nu_bound: float

    @classmethod
    def from_rep(cls, rep: NuclearRep) -> MarkedOperator:
        if len(rep) == 0:
            raise ValueError("representation has no nonzero terms")
        return cls(rep.matrix(), rep, nu_s_from_rep(rep))

    @property
    def s(self) -> float:
        return self.rep.s


def nu_s_hilbert_exact(m: Matrix, s: float) -> float:
    """Exact s-nuclear quasi-norm on Hilbert space, equal to the Schatten s-quasi-norm."""
    _check_s(s)
    if (m.domain_norm, m.codomain_norm) != ("l2", "l2"):
        raise ValueError("exact nu_s is only available between l2 spaces")
    return schatten_norm(m, s)


def svd_rep(m: Matrix, s: float) -> NuclearRep:
    """Representation ``sum sigma_i u_i v_i^H`` read off a singular value decomposition."""
    u, sigma, vh = svd_decompose(m)
    return NuclearRep(vh, (u * sigma).T, s, m.domain_norm, m.codomain_norm)


def circulant_operator(samples) -> MarkedOperator:
    """Convolution by ``f`` on the N-point circle with normalized counting measure.

    ``T[s, t] = f[(s - t) mod N] / N`` acting l_inf -> l_inf. The representation
    pairs the point evaluation at ``t`` with column ``t`` of ``T``, so its
    certificate is ``max_j |f(t_j)|``.
    """
    f = np.asarray(samples, dtype=complex).ravel()
    n = f.size
    if n < 1:
        raise ValueError("symbol needs at least one sample")
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    t = f[idx] / n
    rep = NuclearRep(np.eye(n), t.T, 1.0, "linf", "linf")
    return MarkedOperator(Matrix(t, "linf", "linf"), rep, nu_s_from_rep(rep))


def random_nuclear(rows: int, cols: int, s: float, target_nu: float, term_count: int,
                   seed, domain_norm: NormTag = "l2", codomain_norm: NormTag = "l2",
                   complex_entries: bool = False) -> MarkedOperator:
    """Seeded random operator whose representation certificate equals ``target_nu``."""
    _check_s(s)
    if not target_nu > 0:
        raise ValueError("target_nu must be positive")
    if term_count < 1:
        raise ValueError("term_count must be positive")
    rng = np.random.default_rng(seed)

    def draw(shape):
        z = rng.standard_normal(shape)
        if complex_entries:
            z = z + 1j * rng.standard_normal(shape)
        return z.astype(complex)

    xs = draw((term_count, cols))
    ys = draw((term_count, rows))
    xs /= vector_norms(xs, DUAL_TAG[domain_norm])[:, None]
    ys /= vector_norms(ys, codomain_norm)[:, None]
    weights = rng.uniform(0.05, 1.0, size=term_count)
    weights *= target_nu / _quasi_norm(weights, s)
    rep = NuclearRep(xs, ys * weights[:, None], s, domain_norm, codomain_norm)
    return MarkedOperator.from_rep(rep)


@dataclass(frozen=True)
class CanonicalChain:
    """``T = B @ diag(d) @ A`` with ``A: X -> l_inf^m`` and ``B: l_1^m -> Y`` contractions."""

    A: Matrix
    d: np.ndarray
    B: Matrix
    s: float

    def reconstruct(self) -> np.ndarray:
        return (self.B.entries * self.d) @ self.A.entries


def canonical_factorization(op: MarkedOperator) -> CanonicalChain:
    rep = op.rep
    if len(rep) == 0:
        raise ValueError("representation has no terms")
    fn, vn = rep.functional_norms, rep.vector_norms
    a = Matrix(rep.functionals / fn[:, None], rep.domain_norm, "linf")
    b = Matrix((rep.vectors / vn[:, None]).T, "l1", rep.codomain_norm)
    d = fn * vn
    d.flags.writeable = False
    return CanonicalChain(a, d, b, rep.s)
