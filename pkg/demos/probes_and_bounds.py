"""
Oscillatory probes and derivative bounds
========================================

Two integrals involving sin(y mu_n) whose limits drive pointwise
convergence, and a grid check of five inequalities for mu_n.
"""

import math

import numpy as np

from rational_fourier import bound_check, riemann_lebesgue_probe, sine_integral_probe
from rational_fourier.poles import constant_poles, power_law

upper = constant_poles(256, 0.0, 2.0)

ns = [4, 16, 64, 256]
for n, v in zip(ns, sine_integral_probe(upper, ns, x=0.0, delta=1.0)):
    print(f"n = {n:3d}  int_0^1 sin(y mu_n)/y dy = {v:.6f}   (pi/2 = {math.pi / 2:.6f})")

ns = [1, 4, 16, 64]
for n, v in zip(ns, riemann_lebesgue_probe(upper, lambda y: np.exp(-y), ns)):
    print(f"n = {n:3d}  int_0^inf e^-y sin(y mu_n) dy = {v:+.5f}")

# margins: nonnegative means the inequality holds on the whole grid
xg = np.linspace(-5, 5, 41)
yg = np.linspace(0.125, 5, 40)
for label, seq in (("constant 2i", constant_poles(20, 0.0, 2.0)), ("power law", power_law(20, 0.5, 0.75))):
    rep = bound_check(seq, 20, xg, yg)
    print(label)
    for name, margin in rep.worst().items():
        print(f"  {name:18s} {margin:+.4f}")

# a single pole of height g gives max |[y mu]''| = 9 / (4 sqrt 3 g^2),
# about 1.3 times its 1/g^2 share of varsigma
g = 2.0
s = np.linspace(0, 5, 200001)
peak = np.max(np.abs(4 * g * s / (s**2 + g**2) ** 2))
print("single pole:", peak, "vs 1/g^2 =", 1 / g**2, "ratio", peak * g**2)
