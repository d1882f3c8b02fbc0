"""Christoffel-Darboux and Dirichlet kernels of the rational system.

Phase convention.  For a pole ``p = alpha + i*gamma`` the increment

    arctan((t - alpha)/gamma) - arctan((x - alpha)/gamma)
        = integral_x^t gamma / ((u - alpha)^2 + gamma^2) du

is computed as a single ``atan2`` so that nearby ``x, t`` do not cancel
and accumulated phases never wrap.  The Dirichlet kernel

    D_{n,m}(x, t) = sum_{k=-m+1}^{n-1} conj(Phi_k(x)) Phi_k(t)

then equals ``exp(i(U+L)) sin(U-L) / (t-x)`` with ``U`` the summed upper
increments and ``L`` the lower ones, which collapses to
``sin(2U)/(t-x)`` for conjugate-paired poles.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .basis import BasisSystem, blaschke_minus, blaschke_plus, phi_table
from .errors import DegenerateArguments, IndexOutOfRange, ZeroWidth
from .poles import PoleSequence

DIAGONAL_RTOL = 1e-6
DEGENERATE_RTOL = 1e-13


class KernelMethod(enum.Enum):
    DIRECT_SUM = "direct_sum"
    CLOSED_FORM = "closed_form"
    SINE_FORM = "sine_form"
    DIAGONAL_LIMIT = "diagonal_limit"


@dataclass(frozen=True)
class KernelEvaluation:
    value: complex
    method: KernelMethod
    n: int
    m: int
    x: float
    t: float


# ---------------------------------------------------------------------------
# phase helpers
# ---------------------------------------------------------------------------


def phase_increment(poles, x, t):
    """Summed ``arctan`` increments from ``x`` to ``t`` over ``poles``.

    ``x`` and ``t`` broadcast against each other; the pole axis is summed.
    """
    poles = np.asarray(poles, dtype=complex)
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    out = np.zeros(np.broadcast(x, t).shape)
    for p in poles:
        a, g = p.real, p.imag
        out = out + np.arctan2(g * (t - x), g * g + (t - a) * (x - a))
    return out[()] if out.ndim == 0 else out


def phase_density(poles, u):
    """``sum gamma / ((u - alpha)^2 + gamma^2)`` and its first u-derivative."""
    poles = np.asarray(poles, dtype=complex)
    u = np.asarray(u, dtype=float)
    d1 = np.zeros(u.shape)
    d2 = np.zeros(u.shape)
    for p in poles:
        a, g = p.real, p.imag
        s = u - a
        q = s * s + g * g
        d1 = d1 + g / q
        d2 = d2 - 2.0 * g * s / (q * q)
    return d1, d2


# ---------------------------------------------------------------------------
# Christoffel-Darboux identities
# ---------------------------------------------------------------------------


def _cd_denominator(z, zeta):
    z = np.asarray(z, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex)
    den = np.conj(zeta) - z
    if np.any(np.abs(den) < DEGENERATE_RTOL * (1.0 + np.abs(z))):
        raise DegenerateArguments("conj(zeta) == z; the closed form is a 0/0 limit there")
    return 2j * den


def cd_kernel_plus(upper: PoleSequence, n: int, z, zeta):
    """``sum_{k<n} conj(Phi+_k(zeta)) Phi+_k(z)`` in closed form."""
    den = _cd_denominator(z, zeta)
    bz = blaschke_plus(upper, n, z)
    bzeta = blaschke_plus(upper, n, zeta)
    return (1.0 - np.conj(bzeta) * bz) / den


def cd_kernel_minus(lower: PoleSequence, m: int, z, zeta):
    """``sum_{k=1}^{m-1} conj(Phi-_k(zeta)) Phi-_k(z)`` in closed form."""
    den = _cd_denominator(z, zeta)
    bz = blaschke_minus(lower, m, z)
    bzeta = blaschke_minus(lower, m, zeta)
    return (np.conj(bzeta) * bz - 1.0) / den


def cd_direct_plus(system: BasisSystem, n: int, z, zeta):
    if n == 0:
        return np.zeros(np.broadcast(np.asarray(z), np.asarray(zeta)).shape, complex)[()]
    return np.sum(np.conj(phi_table(system, 0, n - 1, zeta)) * phi_table(system, 0, n - 1, z), axis=0)


def cd_direct_minus(system: BasisSystem, m: int, z, zeta):
    if m <= 1:
        return np.zeros(np.broadcast(np.asarray(z), np.asarray(zeta)).shape, complex)[()]
    lo = -(m - 1)
    return np.sum(np.conj(phi_table(system, lo, -1, zeta)) * phi_table(system, lo, -1, z), axis=0)


# ---------------------------------------------------------------------------
# Dirichlet kernel on the real axis
# ---------------------------------------------------------------------------


def _check_orders(system: BasisSystem, n: int, m: int):
    if n < 0 or m < 1:
        raise IndexOutOfRange(f"need n >= 0 and m >= 1, got n={n}, m={m}")
    if n > len(system.upper):
        raise IndexOutOfRange(f"D_(n={n}) needs {n} upper poles, have {len(system.upper)}")
    if m - 1 > len(system.lower):
        raise IndexOutOfRange(f"D_(m={m}) needs {m - 1} lower poles, have {len(system.lower)}")


def dirichlet_direct(system: BasisSystem, n: int, m: int, x, t):
    """Kernel by summing ``conj(Phi_k(x)) Phi_k(t)`` for ``k = -m+1..n-1``."""
    _check_orders(system, n, m)
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    if n == 0 and m == 1:
        return np.zeros(np.broadcast(x, t).shape, complex)[()]
    lo, hi = -m + 1, n - 1
    out = np.sum(np.conj(phi_table(system, lo, hi, x)) * phi_table(system, lo, hi, t), axis=0)
    return out[()] if out.ndim == 0 else out


def _is_diagonal(x, t):
    return np.abs(t - x) < DIAGONAL_RTOL * (1.0 + np.abs(x))


def dirichlet_closed(system: BasisSystem, n: int, m: int, x, t, allow_diagonal: bool = True):
    """Exponential-form kernel built from upper and lower phase sums.

    Near ``t == x`` the 0/0 quotient is replaced by its first-order Taylor
    expansion about ``x`` unless ``allow_diagonal`` is false.
    """
    _check_orders(system, n, m)
    up = system.upper.prefix(n)
    lo = system.lower.prefix(m - 1)
    x, t = np.broadcast_arrays(np.asarray(x, float), np.asarray(t, float))
    diag = _is_diagonal(x, t)
    if np.any(diag) and not allow_diagonal:
        raise DegenerateArguments("t == x and the diagonal limit path is disabled")
    h = t - x
    safe_h = np.where(diag, 1.0, h)
    u_ph = phase_increment(up, x, t)
    l_ph = phase_increment(lo, x, t)
    off = np.exp(1j * (u_ph + l_ph)) * np.sin(u_ph - l_ph) / safe_h
    if np.any(diag):
        u1, u2 = phase_density(up, x)
        l1, l2 = phase_density(lo, x)
        on = (u1 - l1) + h * (0.5 * (u2 - l2) + 1j * (u1 * u1 - l1 * l1))
        off = np.where(diag, on, off)
    return off[()] if off.ndim == 0 else off


def dirichlet_sine(upper: PoleSequence, n: int, x, t):
    """Real kernel ``sin(A)/(t-x)`` for conjugate-paired poles, ``m = n + 1``.

    ``A`` is twice the summed upper phase between ``x`` and ``t``.  On the
    diagonal the value is ``A'(x) + A''(x)(t-x)/2``.
    """
    poles = upper.prefix(n)
    x, t = np.broadcast_arrays(np.asarray(x, float), np.asarray(t, float))
    diag = _is_diagonal(x, t)
    h = t - x
    big_a = 2.0 * phase_increment(poles, x, t)
    out = np.sin(big_a) / np.where(diag, 1.0, h)
    if np.any(diag):
        d1, d2 = phase_density(poles, x)
        out = np.where(diag, 2.0 * d1 + h * d2, out)
    return out[()] if out.ndim == 0 else out


def kernel(system: BasisSystem, n: int, m: int, x: float, t: float, method: KernelMethod | str = KernelMethod.CLOSED_FORM) -> KernelEvaluation:
    """Evaluate ``D_{n,m}(x, t)`` by the requested route, tagged with provenance."""
    method = KernelMethod(method)
    if method is KernelMethod.DIRECT_SUM:
        value = dirichlet_direct(system, n, m, x, t)
    elif method is KernelMethod.SINE_FORM:
        if not system.conjugate_paired or m != n + 1:
            raise ValueError("sine form needs a conjugate-paired system with m == n + 1")
        value = dirichlet_sine(system.upper, n, x, t)
    else:
        value = dirichlet_closed(system, n, m, x, t)
    if method is not KernelMethod.DIRECT_SUM and bool(_is_diagonal(np.float64(x), np.float64(t))):
        method = KernelMethod.DIAGONAL_LIMIT
    return KernelEvaluation(complex(value), method, n, m, float(x), float(t))


# ---------------------------------------------------------------------------
# phase function mu_n(y; x)
# ---------------------------------------------------------------------------


class MuDerivatives(NamedTuple):
    d_y_of_y_mu: np.ndarray | float
    d2_y_of_y_mu: np.ndarray | float


def y_mu(upper: PoleSequence, n: int, x, y):
    """``y * mu_n(y; x)``: twice the summed phase from ``x`` to ``x + y``.

    Total in ``y`` (zero at ``y = 0``), which is why the probes integrate
    against it rather than against ``mu`` itself.
    """
    x = np.asarray(x, dtype=float)
    return 2.0 * phase_increment(upper.prefix(n), x, x + np.asarray(y, dtype=float))


def mu(upper: PoleSequence, n: int, x, y):
    """Averaged phase density over ``[x, x+y]`` (negative ``y`` allowed)."""
    y = np.asarray(y, dtype=float)
    if np.any(y == 0):
        raise ZeroWidth("mu is undefined at y = 0; use mu_limit")
    out = y_mu(upper, n, x, y) / y
    return out[()] if np.ndim(out) == 0 else out


def mu_limit(upper: PoleSequence, n: int, x):
    """``lim_{y->0} mu_n(y; x)``: the phase density at ``x``."""
    d1, _ = phase_density(upper.prefix(n), x)
    out = 2.0 * d1
    return out[()] if np.ndim(out) == 0 else out


def mu_derivatives(upper: PoleSequence, n: int, x, y) -> MuDerivatives:
    """First and second y-derivatives of ``y * mu_n(y; x)``."""
    x = np.asarray(x, dtype=float)
    d1, d2 = phase_density(upper.prefix(n), x + np.asarray(y, dtype=float))
    d1, d2 = 2.0 * d1, 2.0 * d2
    if np.ndim(d1) == 0:
        return MuDerivatives(float(d1), float(d2))
    return MuDerivatives(d1, d2)
