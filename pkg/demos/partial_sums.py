"""
Partial sums and their convergence
==================================

Fourier coefficients, partial sums S_n and their L2 error, plus pointwise
behaviour at a jump and at a point of continuity.
"""

import numpy as np

from rational_fourier import BasisSystem, lp_error, partial_sum
from rational_fourier.functions import gaussian, lorentzian, signed_exp
from rational_fourier.poles import constant_poles
from rational_fourier.quadrature import fourier_coefficients
from rational_fourier.series import jump_convergence

system = BasisSystem.paired(constant_poles(64, 0.0, 2.0))
f = lorentzian()

# coefficients c_k, k = -3..2
print("c_k:", np.round(fourier_coefficients(system, f, -3, 2), 8))

# L2 error falls fast for this smooth, slowly decaying target
for n in (1, 2, 4, 8, 16):
    print(f"n = {n:2d}  ||f - S_n f||_2 = {lp_error(system, f, n):.3e}")

# continuous point: S_n(f; 0) -> f(0)
for n in (2, 8, 32):
    print(f"S_{n}(gauss; 0) = {partial_sum(system, gaussian(), n, 0.0):.12f}")

# jump of height 2 at 0; with poles off the imaginary axis the symmetry
# that pins S_n(f; 0) to 0 is broken, so the approach to the midpoint shows
shifted = BasisSystem.paired(constant_poles(64, 1.0, 2.0))
rep = jump_convergence(shifted, signed_exp(0.0), 0.0, [2, 4, 8, 16, 32, 64])
print(rep.to_csv_text())
