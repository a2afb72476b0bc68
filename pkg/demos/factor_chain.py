"""
Factoring a product of nuclear operators through a Schatten class
==================================================================

Build a short chain of operators between l_p spaces, each with an explicit
s-nuclear representation, then factor the product as B U A with U acting
on l_2 and check every number the certificate claims.
"""

from dataclasses import replace

import numpy as np

from snuclear import (allocation_plan, chain_product, compose_exponent, factor_product, random_nuclear,
                      rotation_trace_check, verify_certificate)

# two operators: l_inf^6 -> l_1^8 is 2/3-nuclear, l_1^8 -> l_2^6 is nuclear
T1 = random_nuclear(8, 6, 2 / 3, 1.0, term_count=5, seed=1, domain_norm="linf", codomain_norm="l1")
T2 = random_nuclear(6, 8, 1.0, 2.0, term_count=4, seed=2, domain_norm="l1", codomain_norm="l2")
chain = [T1, T2]  # applied left to right: T = T2 T1

budget = compose_exponent([T1.s, T2.s])
print(f"1/r = {budget.inv_r:.4f}, so U should land in S_{budget.r:.4f}")

# where that budget comes from: bridges are Hilbert-Schmidt, diagonals carry the rest
for piece in allocation_plan(budget.s_list):
    print(f"  {piece.kind:<8} {piece.index}  contributes {piece.inv_exponent:.4f}")

cert = factor_product(chain)
print("shapes  A", cert.A.shape, " U", cert.U.shape, " B", cert.B.shape)
print(f"||A|| sigma_r(U) ||B|| = {cert.gamma_value:.6f}")
print(f"prod nu_s(T_k)         = {cert.nu_product:.6f}")

# recompute everything from scratch against the product itself
report = verify_certificate(cert, chain_product(chain))
print(report.summary())

# B U A and U A B share their nonzero eigenvalues
trace = rotation_trace_check(cert.A, cert.U, cert.B)
print("traces of powers agree:", trace.passed, f"(worst relative error {trace.max_rel_error:.1e})")

# spoil the middle factor and the verifier notices
bad = verify_certificate(replace(cert, U=cert.U @ cert.U), chain_product(chain))
print("tampered certificate passes?", bad.passed)
np.set_printoptions(precision=3, suppress=True)
print("singular values of U:", np.diag(cert.U.entries).real)
