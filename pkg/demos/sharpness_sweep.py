"""
How far can the Schatten index of a product of two nuclear operators drop?
==========================================================================

Convolution by the bounded symbol f on the N-point circle is nuclear on
l_inf with nu_1 = max |f|. Its square has eigenvalues equal to the squared
Fourier coefficients of f. If the square factored through S_r with r < 2,
those eigenvalues would be s-summable with 1/s = 1/2 + 1/r and s < 1.
The sweep reads the smallest s that still looks summable.
"""

import numpy as np

from snuclear import circulant_operator, sharpness_sweep, square_eigen_sequence

# small case first: the spectrum of T T really is dft(f)^2
f = np.cos(2 * np.pi * np.arange(8) / 8) + 0.5
T = circulant_operator(f).matrix.entries
print("dense eigenvalues:", np.round(np.sort(np.abs(np.linalg.eigvals(T @ T)))[::-1][:3], 6))
print("from the DFT:     ", np.round(np.abs(square_eigen_sequence(f))[:3], 6))

report = sharpness_sweep([2**10, 2**12, 2**14], beta=1.5, s_list=(0.75, 0.9, 1.0), seed=0)
for row in report.rows:
    print(f"N = {row.N:>6}  s = {row.exponent:<5}  sum = {row.partial_sum:9.5f}  "
          f"slope = {row.slope:.4f}  {row.verdict}")
print(f"inferred lower bound for r: {report.inferred_r_lower:.4f}")
# the limit value is 2; at N = 2^14 the log factor in the coefficients still
# makes s = 0.9 look summable, so the finite-N reading stops short of it

# a degenerate symbol carries no information
flat = sharpness_sweep([256], symbol=lambda n: np.ones(n))
print("constant symbol flagged degenerate:", flat.degenerate)
