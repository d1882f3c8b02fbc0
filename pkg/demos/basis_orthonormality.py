"""
The two-sided rational basis
============================

Build the system from a handful of upper poles, look at a few basis
functions on the real line and check that the Gram matrix is the identity.
"""

import numpy as np

from rational_fourier import BasisSystem, PoleSequence, phi, phi_table
from rational_fourier.quadrature import inner_product

# lower poles are the conjugates of the upper ones, shifted by one index
upper = PoleSequence([2j, 1 + 1j, -1 + 2j, 3j, 0.5 + 1.5j, -0.5 + 1j])
system = BasisSystem.paired(upper)
print("available indices:", system.index_range)

# every Phi_k has modulus sqrt(Im a) / |x - a| on the real line
x = np.linspace(-4, 4, 9)
table = phi_table(system, -3, 2, x)
print("|Phi_k(x)| rows k = -3..2:")
print(np.round(np.abs(table), 4))

# conjugate pairing makes Phi_{-n-1} the conjugate of Phi_n
print("Phi_-2(0.7) =", phi(system, -2, 0.7), " conj(Phi_1(0.7)) =", np.conj(phi(system, 1, 0.7)))

# Gram matrix with the (1/pi) normalisation
ks = range(-5, 6)
gram = np.array([[inner_product(lambda t, j=j: phi(system, j, t), lambda t, k=k: phi(system, k, t)) for k in ks] for j in ks])
print("max |G - I| =", np.max(np.abs(gram - np.eye(len(ks)))))
