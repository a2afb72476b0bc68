"""Hilbert-space factorization of products of s-nuclear operators.

For a chain ``T = T_n ... T_1`` with ``T_k`` s_k-nuclear, ``factor_product``
returns ``A, U, B`` with ``T = B U A``, ``A`` and ``B`` bounded and ``U`` in
the Schatten class S_r, ``1/r = sum 1/s_k - (n+1)/2``, together with the
numbers ``||A|| sigma_r(U) ||B||`` and ``prod nu_{s_k}(T_k)``.

Construction. Write ``T_k = B_k diag(d_k) A_k`` (canonical chain), so that
``A_k: X_k -> l_inf``, ``B_k: l_1 -> X_{k+1}`` are contractions and the
bridges ``A_{k+1} B_k`` have entries of modulus at most 1. Every diagonal
gives ``d_k^(s_k/2)`` to each neighbour (the outer maps for k = 1, n, the
bridges otherwise). Weighted bridges ``diag(a) M diag(b)`` with a, b in l_2
are Hilbert-Schmidt; what stays on each diagonal is ``d_k^(1 - s_k)``, whose
Schatten index is ``s_k / (1 - s_k)``. Powers split exactly
(``||d^t||_{s/t} = ||d||_s^t``), so the Schatten-Hoelder inequality gives
``sigma_r(U) ||A|| ||B|| <= prod ||d_k||_{s_k}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .config import DEFAULT, Config
from .linalg import Matrix, NormValue, as_array, hs_norm, operator_norm, schatten_norm, svd_decompose
from .operators import MarkedOperator, canonical_factorization


@dataclass(frozen=True)
class ExponentBudget:
    s_list: tuple[float, ...]
    inv_r: float
    r: float

    @property
    def n(self) -> int:
        return len(self.s_list)


def _inv_r(s_list: Sequence[float]) -> float:
    return math.fsum([1.0 / s for s in s_list] + [-(len(s_list) + 1) / 2.0])


def compose_exponent(s_list: Sequence[float]) -> ExponentBudget:
    """Schatten index ``r`` with ``1/r = sum 1/s_k - (n+1)/2``; ``inf`` when that is <= 0."""
    s_list = tuple(float(s) for s in s_list)
    if not s_list:
        raise ValueError("exponent list must be nonempty")
    for s in s_list:
        if not 0 < s <= 1:
            raise ValueError(f"nuclear exponents must lie in (0, 1], got {s}")
    inv_r = _inv_r(s_list)
    r = 1.0 / inv_r if inv_r > 0 else math.inf
    return ExponentBudget(s_list, inv_r, r)


class Allocation(NamedTuple):
    kind: str  # "outer", "diagonal" or "bridge"
    index: int
    inv_exponent: float


def allocation_plan(s_list: Sequence[float]) -> list[Allocation]:
    """Reciprocal Schatten indices of every factor the construction produces.

    Outer maps are bounded (0), leftover diagonals carry ``1/s_k - 1`` and
    each weighted bridge is Hilbert-Schmidt (1/2). The entries sum to
    ``compose_exponent(s_list).inv_r``.
    """
    n = len(s_list)
    plan = [Allocation("outer", 0, 0.0)]
    for k, s in enumerate(s_list):
        plan.append(Allocation("diagonal", k, 1.0 / s - 1.0))
        if k < n - 1:
            plan.append(Allocation("bridge", k, 0.5))
    plan.append(Allocation("outer", n - 1, 0.0))
    return plan


@dataclass(frozen=True)
class FactorizationCertificate:
    A: Matrix
    U: Matrix
    B: Matrix
    budget: ExponentBudget
    sigma_r_U: float
    norm_A: NormValue
    norm_B: NormValue
    gamma_value: float
    nu_product: float

    def product(self) -> np.ndarray:
        return self.B.entries @ self.U.entries @ self.A.entries


def _check_chain(chain: Sequence[MarkedOperator]) -> None:
    if not chain:
        raise ValueError("chain must contain at least one operator")
    for k, (t, nxt) in enumerate(zip(chain, chain[1:])):
        if nxt.matrix.cols != t.matrix.rows:
            raise ValueError(f"operators {k} and {k + 1} are not conformable: "
                             f"{t.matrix.shape} then {nxt.matrix.shape}")
        if nxt.matrix.domain_norm != t.matrix.codomain_norm:
            raise ValueError(f"operator {k} lands in {t.matrix.codomain_norm} but operator "
                             f"{k + 1} acts on {nxt.matrix.domain_norm}")


def chain_product(chain: Sequence[MarkedOperator]) -> Matrix:
    """``T_n ... T_1`` for a chain listed in order of application."""
    _check_chain(chain)
    out = chain[0].matrix
    for t in chain[1:]:
        out = t.matrix @ out
    return out


def _gamma(norm_a: NormValue, sigma: float, norm_b: NormValue) -> float:
    return norm_a.value * sigma * norm_b.value


def _sigma(u: Matrix, r: float) -> float:
    return schatten_norm(u, r)


def factor_product(chain: Sequence[MarkedOperator], compress: bool = True,
                   config: Config = DEFAULT) -> FactorizationCertificate:
    """Factor ``T_n ... T_1`` through a Schatten-class operator on l_2.

    With ``compress`` the middle factor is replaced by its nonzero singular
    values (``U = W S V^H`` becomes ``A <- V^H A``, ``U <- S``, ``B <- B W``),
    dropping values below ``config.rank_rtol`` relative to the largest.
    Neither norm grows, and rounding noise no longer inflates sigma_r for
    small r.
    """
    _check_chain(chain)
    budget = compose_exponent([t.s for t in chain])
    links = [canonical_factorization(t) for t in chain]
    first, last = links[0], links[-1]
    dom, cod = chain[0].matrix.domain_norm, chain[-1].matrix.codomain_norm

    a = (first.d ** (first.s / 2))[:, None] * first.A.entries
    b = last.B.entries * last.d ** (last.s / 2)
    u = np.diag(first.d ** (1 - first.s)).astype(complex)
    for prev, nxt in zip(links, links[1:]):
        bridge = nxt.A.entries @ prev.B.entries
        weighted = (nxt.d ** (nxt.s / 2))[:, None] * bridge * prev.d ** (prev.s / 2)
        u = (nxt.d ** (1 - nxt.s))[:, None] * (weighted @ u)

    if compress:
        w, mu, vh = svd_decompose(u)
        keep = max(1, int(np.sum(mu > config.rank_rtol * mu[0])))
        a = vh[:keep] @ a
        b = b @ w[:, :keep]
        u = np.diag(mu[:keep]).astype(complex)

    A = Matrix(a, dom, "l2")
    U = Matrix(u, "l2", "l2")
    B = Matrix(b, "l2", cod)
    norm_a = operator_norm(A)
    norm_b = operator_norm(B)
    sigma = _sigma(U, budget.r)
    nu_product = math.prod(t.nu_bound for t in chain)
    return FactorizationCertificate(A, U, B, budget, sigma, norm_a, norm_b,
                                    _gamma(norm_a, sigma, norm_b), nu_product)


@dataclass
class VerificationReport:
    residual: float
    sigma_r_U: float
    norm_A: NormValue
    norm_B: NormValue
    gamma_value: float
    nu_product: float
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL (" + "; ".join(self.failures) + ")"
        flag = "" if self.norm_A.exact and self.norm_B.exact else " [norm bounds]"
        return (f"{status}: residual={self.residual:.3e} sigma_r(U)={self.sigma_r_U:.6g} "
                f"||A||={self.norm_A.value:.6g} ||B||={self.norm_B.value:.6g}{flag} "
                f"gamma={self.gamma_value:.6g} nu_product={self.nu_product:.6g}")


def verify_certificate(cert: FactorizationCertificate, T, config: Config = DEFAULT) -> VerificationReport:
    """Recompute every number in ``cert`` against the target matrix ``T``."""
    t = as_array(T)
    a, u, b = cert.A.entries, cert.U.entries, cert.B.entries
    if a.shape[0] != u.shape[1] or u.shape[0] != b.shape[1] or (b.shape[0], a.shape[1]) != t.shape:
        raise ValueError(f"certificate shapes B{b.shape} U{u.shape} A{a.shape} do not produce {t.shape}")
    scale = hs_norm(t)
    err = hs_norm(b @ u @ a - t)
    residual = err / scale if scale > 0 else err
    norm_a = operator_norm(cert.A)
    norm_b = operator_norm(cert.B)
    sigma = _sigma(cert.U, cert.budget.r)
    gamma = _gamma(norm_a, sigma, norm_b)
    report = VerificationReport(residual, sigma, norm_a, norm_b, gamma, cert.nu_product)
    if not residual <= config.reconstruction_tol:
        report.failures.append(f"reconstruction residual {residual:.3e} > {config.reconstruction_tol:g}")
    if not gamma <= cert.nu_product * (1 + config.gamma_rtol):
        report.failures.append(f"gamma violation {gamma:.12g} > {cert.nu_product:.12g}")
    return report


class HoelderReport(NamedTuple):
    r: float
    sigma_r_product: float
    bound: float
    passed: bool


def schatten_hoelder_check(mp, p: float, mq, q: float, config: Config = DEFAULT) -> HoelderReport:
    """Check ``sigma_r(Mp Mq) <= sigma_p(Mp) sigma_q(Mq)`` with ``1/r = 1/p + 1/q``."""
    for m in (mp, mq):
        if isinstance(m, Matrix) and (m.domain_norm, m.codomain_norm) != ("l2", "l2"):
            raise ValueError("Schatten classes need l2 tags")
    a, b = as_array(mp), as_array(mq)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    r = 1.0 / (1.0 / p + 1.0 / q)
    lhs = schatten_norm(a @ b, r)
    rhs = schatten_norm(a, p) * schatten_norm(b, q)
    return HoelderReport(r, lhs, rhs, lhs <= (1 + config.gamma_rtol) * rhs)
