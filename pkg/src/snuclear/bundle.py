"""JSON bundle format for matrices, marked operators and certificates.

Matrix object::

    {"rows": m, "cols": n, "domain_norm": "linf", "codomain_norm": "l2",
     "entries_re": [...], "entries_im": [...]}      # row-major

Operator bundle: a matrix object plus ``rep`` (list of
``{xprime_re, xprime_im, y_re, y_im}``), ``s`` and ``nu_bound``. A file may
hold one operator or ``{"chain": [op, ...]}`` listed in order of
application. Certificates add ``A``, ``U``, ``B`` (matrix objects),
``s_list``, ``inv_r``, ``r`` (``"inf"`` when infinite), ``sigma_r_U``,
``gamma_value`` and ``nu_product``.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .factorization import ExponentBudget, FactorizationCertificate
from .linalg import Matrix, operator_norm
from .operators import MarkedOperator, NuclearRep


def _float_out(x: float):
    return "inf" if math.isinf(x) else float(x)


def _float_in(x) -> float:
    return math.inf if x in ("inf", "Infinity") else float(x)


def _split(a) -> tuple[list, list]:
    a = np.asarray(a, dtype=complex).ravel()
    return a.real.tolist(), a.imag.tolist()


def _join(re, im, size: int, what: str) -> np.ndarray:
    if len(re) != size or len(im) != size:
        raise ValueError(f"{what}: expected {size} entries, got {len(re)} real / {len(im)} imaginary")
    return np.asarray(re, dtype=float) + 1j * np.asarray(im, dtype=float)


def matrix_to_dict(m: Matrix) -> dict:
    re, im = _split(m.entries)
    return {"rows": m.rows, "cols": m.cols, "domain_norm": m.domain_norm,
            "codomain_norm": m.codomain_norm, "entries_re": re, "entries_im": im}


def matrix_from_dict(d: dict) -> Matrix:
    try:
        rows, cols = int(d["rows"]), int(d["cols"])
        entries = _join(d["entries_re"], d["entries_im"], rows * cols, "matrix")
        return Matrix(entries.reshape(rows, cols), d["domain_norm"], d["codomain_norm"])
    except KeyError as exc:
        raise ValueError(f"matrix object lacks field {exc}") from None


def operator_to_dict(op: MarkedOperator) -> dict:
    out = matrix_to_dict(op.matrix)
    terms = []
    for x, y in zip(op.rep.functionals, op.rep.vectors):
        xr, xi = _split(x)
        yr, yi = _split(y)
        terms.append({"xprime_re": xr, "xprime_im": xi, "y_re": yr, "y_im": yi})
    out.update(rep=terms, s=op.s, nu_bound=op.nu_bound)
    return out


def operator_from_dict(d: dict) -> MarkedOperator:
    m = matrix_from_dict(d)
    try:
        terms = d["rep"]
        xs = [_join(t["xprime_re"], t["xprime_im"], m.cols, "functional") for t in terms]
        ys = [_join(t["y_re"], t["y_im"], m.rows, "vector") for t in terms]
        s = float(d["s"])
    except KeyError as exc:
        raise ValueError(f"operator bundle lacks field {exc}") from None
    if not terms:
        raise ValueError("operator bundle has an empty representation")
    rep = NuclearRep(np.array(xs), np.array(ys), s, m.domain_norm, m.codomain_norm)
    op = MarkedOperator.from_rep(rep)
    scale = max(np.linalg.norm(m.entries), 1e-300)
    if np.linalg.norm(op.matrix.entries - m.entries) > 1e-10 * scale:
        raise ValueError("matrix block does not match the sum of representation terms")
    return MarkedOperator(m, rep, op.nu_bound)


def certificate_to_dict(cert: FactorizationCertificate) -> dict:
    return {
        "A": matrix_to_dict(cert.A), "U": matrix_to_dict(cert.U), "B": matrix_to_dict(cert.B),
        "s_list": list(cert.budget.s_list), "inv_r": cert.budget.inv_r,
        "r": _float_out(cert.budget.r), "sigma_r_U": cert.sigma_r_U,
        "gamma_value": cert.gamma_value, "nu_product": cert.nu_product,
    }


def certificate_from_dict(d: dict) -> FactorizationCertificate:
    try:
        A, U, B = (matrix_from_dict(d[k]) for k in ("A", "U", "B"))
        budget = ExponentBudget(tuple(float(s) for s in d["s_list"]), float(d["inv_r"]), _float_in(d["r"]))
        return FactorizationCertificate(A, U, B, budget, float(d["sigma_r_U"]), operator_norm(A),
                                        operator_norm(B), float(d["gamma_value"]), float(d["nu_product"]))
    except KeyError as exc:
        raise ValueError(f"certificate lacks field {exc}") from None


def load_chain(path) -> list[MarkedOperator]:
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict) and "chain" in data:
        return [operator_from_dict(d) for d in data["chain"]]
    return [operator_from_dict(data)]


def save_chain(path, chain) -> None:
    ops = [operator_to_dict(op) for op in chain]
    with open(path, "w") as fh:
        json.dump(ops[0] if len(ops) == 1 else {"chain": ops}, fh)


def load_certificate(path) -> FactorizationCertificate:
    with open(path) as fh:
        return certificate_from_dict(json.load(fh))


def save_certificate(path, cert: FactorizationCertificate) -> None:
    with open(path, "w") as fh:
        json.dump(certificate_to_dict(cert), fh)
