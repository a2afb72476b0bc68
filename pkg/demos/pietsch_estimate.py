"""
Estimating the 2-summing norm of a map from l_inf^n into l_2
============================================================

The smallest c with A^H A <= c^2 diag(mu) for some probability vector mu.
For diagonal maps it equals the l_2 norm of the diagonal; in general it sits
above both the Hilbert-Schmidt norm and the l_inf -> l_2 operator norm.
"""

import numpy as np

from snuclear import Matrix, hs_norm, operator_norm, pi2_upper_bound, svd

d = np.array([3.0, -1.0, 0.5, 2.0])
print("diag:", pi2_upper_bound(np.diag(d)), "vs ||d||_2 =", np.linalg.norm(d))

rng = np.random.default_rng(0)
A = rng.standard_normal((4, 6))
est = pi2_upper_bound(Matrix(A, "linf", "l2"))
print(f"estimate           {est:.6f}")
print(f"HS norm            {hs_norm(A):.6f}")
print(f"l_inf -> l_2 norm  {operator_norm(A, ('linf', 'l2')).value:.6f}")
print(f"sum of columns     {np.linalg.norm(A, axis=0).sum():.6f}")
print(f"sqrt(n) ||A||_2    {np.sqrt(6) * svd(A)[0]:.6f}")
