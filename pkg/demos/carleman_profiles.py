"""
A bounded symbol with slowly summable coefficients
==================================================

The coefficients (n + 2)^(-1/2) log(n + 2)^(-beta), with quadratic Gauss
phases on each dyadic block, are square summable while their partial sums
in l_p for p < 2 keep growing. The phases keep the synthesized function
small on the whole circle.
"""

import numpy as np

from snuclear import (carleman_coefficients, carleman_symbol, dyadic_checkpoints, growth_exponent_fit,
                      lp_partial_profile, membership_verdict)

N = 2**14
c = carleman_coefficients(N, beta=1.5)
checkpoints = dyadic_checkpoints(N)
print("checkpoints:", checkpoints)

for p in (2.0, 1.75, 1.5, 1.25, 1.0):
    profile = lp_partial_profile(c, p, checkpoints)
    fit = growth_exponent_fit(profile)
    print(f"p = {p:<5} S(N) = {profile.sums[-1]:10.4f}  slope = {fit.slope:.4f}  {membership_verdict(profile)}")

# the true growth for p < 2 is N^(1 - p/2) divided by a power of log N;
# at this scale the logarithm hides most of it, which is why p near 2 looks bounded

# sup norm of the synthesized symbol on a 4x oversampled grid
ns = [2**k for k in range(8, 15)]
sups = [carleman_symbol(n, 1.5).sup_norm for n in ns]
for n, s in zip(ns, sups):
    print(f"N = {n:>6}  max |f| = {s:.4f}")
print("fitted sup-norm growth exponent:", round(np.polyfit(np.log(ns), np.log(sups), 1)[0], 4))

# compare: the same moduli with all phases set to zero pile up at t = 0
print("max |f| without phases:", round(float(np.abs(c).sum()), 3))
