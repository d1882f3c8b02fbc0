"""
Christoffel-Darboux and Dirichlet kernels
=========================================

The kernel sums have closed forms.  Compare them with brute-force sums,
including points so close together that the closed form switches to its
diagonal limit.
"""

import numpy as np

from rational_fourier import BasisSystem, PoleSequence
from rational_fourier.kernels import (
    cd_direct_plus,
    cd_kernel_plus,
    dirichlet_closed,
    dirichlet_direct,
    dirichlet_sine,
    mu,
)

rng = np.random.default_rng(7)
upper = PoleSequence(rng.uniform(-2, 2, 8) + 1j * rng.uniform(0.5, 3, 8))
system = BasisSystem.paired(upper)

# Christoffel-Darboux off the real axis
z = np.array([0.3 + 0.2j, -1.0 + 1.5j, 2.0 - 0.1j])
zeta = np.array([1.1 + 0.7j, 0.4 + 0.1j, -0.5 + 2.0j])
print("CD closed:", cd_kernel_plus(upper, 5, z, zeta))
print("CD direct:", cd_direct_plus(system, 5, z, zeta))

# Dirichlet kernel on the real line, from far apart down to coincident points
x = 0.4
for gap in (2.0, 1e-2, 1e-5, 1e-8, 0.0):
    t = x + gap
    print(
        f"gap {gap:8.0e}: direct {dirichlet_direct(system, 4, 5, x, t).real: .15f}"
        f"  closed {dirichlet_closed(system, 4, 5, x, t).real: .15f}"
        f"  sine {dirichlet_sine(upper, 4, x, t): .15f}"
    )

# the sine form is driven by the averaged phase mu_n(y; x)
y = np.linspace(-4, 4, 9)
y = y[y != 0]
print("mu_4(y; 0.4):", np.round(mu(upper, 4, x, y), 5))
