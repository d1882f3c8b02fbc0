"""Blaschke products and the two-sided orthonormal rational system.

For upper poles ``a_k`` (k >= 0) and lower poles ``b_k`` (k >= 1)

    Phi_n(z)  = sqrt(Im a_n)   / (z - conj a_n) * B+_n(z),   n >= 0
    Phi_-n(z) = sqrt(-Im b_n)  / (z - conj b_n) * B-_n(z),   n >= 1

where ``B+_n`` is the Blaschke product over ``a_0..a_{n-1}`` and ``B-_n``
over ``b_1..b_{n-1}``, each factor normalised by the unimodular
``chi(p) = |1+p^2| / (1+p^2)``.  Every evaluator accepts scalar or array
``z`` and returns the same shape.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, PoleHit, PrefixTooShort
from .poles import HalfPlane, PoleSequence, validate

POLE_HIT_RTOL = 1e-13


def chi(pole):
    """Unimodular normaliser ``|1+p^2|/(1+p^2)``; defined as 1 at ``p = +-i``."""
    p = np.asarray(pole, dtype=complex)
    q = 1.0 + p * p
    safe = np.where(q == 0, 1.0, q)
    out = np.where(q == 0, 1.0 + 0j, np.abs(safe) / safe)
    return out[()] if out.ndim == 0 else out


def _check_pole_hit(z, poles):
    for p in poles:
        hit = np.abs(z - p) < POLE_HIT_RTOL * (1.0 + abs(p))
        if np.any(hit):
            zz = z[hit].flat[0] if np.ndim(z) else z
            raise PoleHit(complex(zz), complex(p))


def _blaschke(zeros, z):
    z = np.asarray(z, dtype=complex)
    _check_pole_hit(z, np.conj(zeros))
    out = np.ones_like(z)
    for a, c in zip(zeros, chi(zeros) if len(zeros) else ()):
        out = out * (c * (z - a) / (z - np.conj(a)))
    return out[()] if out.ndim == 0 else out


def blaschke_plus(upper: PoleSequence, n: int, z):
    """``B+_n(z)``, with zeros at ``a_0..a_{n-1}``; ``B+_0 = 1``."""
    if n < 0:
        raise IndexOutOfRange(f"Blaschke order must be nonnegative, got {n}")
    return _blaschke(upper.prefix(n), z)


def blaschke_minus(lower: PoleSequence, m: int, z):
    """``B-_m(z)``, with zeros at ``b_1..b_{m-1}``; ``B-_1 = 1``."""
    if m < 1:
        raise IndexOutOfRange(f"lower Blaschke order starts at 1, got {m}")
    return _blaschke(lower.prefix(m - 1), z)


@dataclass(frozen=True)
class BasisSystem:
    """Paired pole configuration defining ``Phi_n`` for every integer ``n``.

    ``lower[j]`` stores ``b_{j+1}``.  Use :meth:`paired` for the
    conjugate-paired case ``b_k = conj(a_{k-1})``.
    """

    upper: PoleSequence
    lower: PoleSequence
    conjugate_paired: bool = False

    def __post_init__(self):
        if self.upper.half_plane is not HalfPlane.UPPER:
            raise ValueError("upper sequence must be declared in the upper half-plane")
        if self.lower.half_plane is not HalfPlane.LOWER:
            raise ValueError("lower sequence must be declared in the lower half-plane")
        validate(self.upper)
        if len(self.lower):
            validate(self.lower)
        if self.conjugate_paired:
            k = len(self.lower)
            if k > len(self.upper) or not np.allclose(
                self.lower.poles, np.conj(self.upper.poles[:k]), rtol=1e-14, atol=0
            ):
                raise ValueError("conjugate_paired requires b_k == conj(a_{k-1})")

    @classmethod
    def paired(cls, upper: PoleSequence) -> "BasisSystem":
        return cls(upper, upper.conjugate(), conjugate_paired=True)

    @property
    def index_range(self) -> tuple[int, int]:
        """Inclusive range of indices ``n`` for which ``Phi_n`` is available."""
        return -len(self.lower), len(self.upper) - 1


def phi(system: BasisSystem, n: int, z):
    """Evaluate ``Phi_n(z)`` for any integer ``n`` in the available range."""
    z = np.asarray(z, dtype=complex)
    if n >= 0:
        if n >= len(system.upper):
            raise IndexOutOfRange(f"Phi_{n} needs {n + 1} upper poles, have {len(system.upper)}")
        a = system.upper[n]
        _check_pole_hit(z, [np.conj(a)])
        out = np.sqrt(a.imag) / (z - np.conj(a)) * blaschke_plus(system.upper, n, z)
    else:
        j = -n
        if j > len(system.lower):
            raise IndexOutOfRange(f"Phi_{n} needs {j} lower poles, have {len(system.lower)}")
        b = system.lower[j - 1]
        _check_pole_hit(z, [np.conj(b)])
        out = np.sqrt(-b.imag) / (z - np.conj(b)) * blaschke_minus(system.lower, j, z)
    out = np.asarray(out)
    return out[()] if out.ndim == 0 else out


def phi_table(system: BasisSystem, k_min: int, k_max: int, z) -> np.ndarray:
    """``Phi_k(z)`` for ``k = k_min..k_max`` stacked along axis 0.

    Shares the Blaschke recursion between indices, so a table costs the same
    as its most expensive row.
    """
    z = np.asarray(z, dtype=complex)
    lo, hi = system.index_range
    if k_min < lo or k_max > hi:
        raise IndexOutOfRange(f"indices {k_min}..{k_max} outside available {lo}..{hi}")
    rows = {}
    if k_max >= 0:
        poles = system.upper.prefix(k_max + 1)
        _check_pole_hit(z, np.conj(poles))
        b = np.ones_like(z)
        for k, a in enumerate(poles):
            if k >= k_min:
                rows[k] = np.sqrt(a.imag) / (z - np.conj(a)) * b
            b = b * (chi(a) * (z - a) / (z - np.conj(a)))
    if k_min < 0:
        try:
            poles = system.lower.prefix(-k_min)
        except PrefixTooShort as exc:  # pragma: no cover - guarded above
            raise IndexOutOfRange(str(exc)) from exc
        _check_pole_hit(z, np.conj(poles))
        b = np.ones_like(z)
        for j, p in enumerate(poles, start=1):
            if -j <= k_max:
                rows[-j] = np.sqrt(-p.imag) / (z - np.conj(p)) * b
            b = b * (chi(p) * (z - p) / (z - np.conj(p)))
    return np.stack([rows[k] for k in range(k_min, k_max + 1)]) if rows else np.empty((0,) + z.shape, complex)
