"""Adaptive quadrature on finite, half-infinite and doubly-infinite intervals.

Unbounded intervals are mapped with ``x = x0 + tan(theta)``; the integrands
in this package decay at least like ``|x|^-2`` so the mapped integrand
stays bounded; slower integrable decay leaves an endpoint singularity whose
unresolved tail caps the attainable accuracy.  Each panel is a 15-point Gauss-Legendre
rule; a panel is accepted once its value agrees with the sum of its two
halves to within its share of the tolerance, and refinement stops early
once the summed error estimate is below the tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .basis import BasisSystem, phi
from .errors import IndexOutOfRange, ToleranceNotMet

DEFAULT_TOL = 1e-10
DEFAULT_BUDGET = 2**18

_xi, _wi = np.polynomial.legendre.leggauss(15)
# exact mirror symmetry keeps odd integrands cancelling to the last bit
_NODES = 0.5 * (_xi - _xi[::-1])
_WEIGHTS = 0.5 * (_wi + _wi[::-1])
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureResult:
    value: complex | float
    abs_error_estimate: float
    nodes_used: int


def _panel_values(g, lo, hi):
    """GL15 on every panel ``[lo_i, hi_i]`` with one vectorised call of ``g``."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    pts = mid[:, None] + half[:, None] * _NODES[None, :]
    vals = np.asarray(g(pts))
    if vals.shape != pts.shape:
        vals = np.broadcast_to(vals, pts.shape)
    val = half * (vals @ _WEIGHTS)
    mag = half * (np.abs(vals) @ _WEIGHTS)
    return val, mag


def _adaptive(g, cuts, tol, budget):
    cuts = np.asarray(cuts, dtype=float)
    lo, hi = cuts[:-1], cuts[1:]
    total_width = cuts[-1] - cuts[0]
    val, mag = _panel_values(g, lo, hi)
    used = 15 * lo.size
    done_lo, done_val, done_err = [], [], []
    while lo.size:
        mid = 0.5 * (lo + hi)
        c_lo = np.concatenate([lo, mid])
        c_hi = np.concatenate([mid, hi])
        c_val, c_mag = _panel_values(g, c_lo, c_hi)
        used += 15 * c_lo.size
        k = lo.size
        fine = c_val[:k] + c_val[k:]
        err = np.abs(val - fine)
        fine_mag = c_mag[:k] + c_mag[k:]
        allowed = np.maximum(tol * (hi - lo) / total_width, 50 * _EPS * fine_mag)
        ok = err <= allowed
        # global stop: endpoint singularities never meet the local share
        if math.fsum(np.concatenate(done_err + [err])) <= tol:
            ok[:] = True
        bad = ~ok
        exhausted = bool(bad.any()) and used + 30 * int(bad.sum()) > budget
        keep = np.ones_like(ok) if exhausted else ok
        done_lo.append(lo[keep])
        done_val.append(fine[keep])
        done_err.append(err[keep])
        if exhausted:
            break
        lo = np.concatenate([lo[bad], mid[bad]])
        hi = np.concatenate([mid[bad], hi[bad]])
        val = np.concatenate([c_val[:k][bad], c_val[k:][bad]])
    else:
        exhausted = False
    order = np.argsort(np.concatenate(done_lo), kind="stable")
    values = np.concatenate(done_val)[order]
    errors = np.concatenate(done_err)[order]
    if np.iscomplexobj(values):
        total = complex(math.fsum(values.real), math.fsum(values.imag))
    else:
        total = math.fsum(values)
    estimate = float(math.fsum(errors))
    result = QuadratureResult(total, estimate, used)
    if exhausted:
        raise ToleranceNotMet(budget, estimate, result)
    return result


def _mapped(f, x0, sign=1.0):
    def g(theta):
        tn = np.tan(theta)
        return f(x0 + sign * tn) * (1.0 + tn * tn)

    return g


def integrate_line(f: Callable, tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET, breakpoints=(), panels: int = 8) -> QuadratureResult:
    """Integral of ``f`` over the whole real line.

    ``f`` must accept numpy arrays.  ``breakpoints`` (e.g. jumps) become
    panel boundaries so no panel straddles them.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    cuts = np.linspace(-0.5 * np.pi, 0.5 * np.pi, panels + 1)
    cuts = np.union1d(cuts, np.arctan(np.asarray(breakpoints, dtype=float)))
    return _adaptive(_mapped(f, 0.0), cuts, tol, budget)


def integrate_halfline(f: Callable, start: float = 0.0, tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET, breakpoints=(), panels: int = 8) -> QuadratureResult:
    """Integral of ``f`` over ``(start, inf)``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    cuts = np.linspace(0.0, 0.5 * np.pi, panels + 1)
    bp = np.asarray(breakpoints, dtype=float) - start
    cuts = np.union1d(cuts, np.arctan(bp[bp > 0]))
    return _adaptive(_mapped(f, start), cuts, tol, budget)


def integrate_interval(f: Callable, a: float, b: float, tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET, breakpoints=(), panels: int = 4) -> QuadratureResult:
    """Integral of ``f`` over the finite interval ``[a, b]``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    if b < a:
        r = integrate_interval(f, b, a, tol, budget, breakpoints, panels)
        return QuadratureResult(-r.value, r.abs_error_estimate, r.nodes_used)
    bp = np.asarray(breakpoints, dtype=float)
    cuts = np.union1d(np.linspace(a, b, panels + 1), bp[(bp > a) & (bp < b)])
    return _adaptive(f, cuts, tol, budget)


# ---------------------------------------------------------------------------
# target functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SchwartzLike:
    pass


@dataclass(frozen=True)
class AlgebraicOrder:
    q: float

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("algebraic decay order must be >= 1")


@dataclass(frozen=True)
class Compact:
    lo: float
    hi: float


@dataclass(frozen=True)
class MarkedPoint:
    x0: float
    left: float
    right: float

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.left + self.right)


@dataclass(frozen=True)
class TargetFunction:
    """A real-variable function plus what the caller asserts about it.

    ``eval`` must be vectorised.  The integrability classes in
    ``integrability`` are recorded, never verified.
    """

    eval: Callable
    decay: SchwartzLike | AlgebraicOrder | Compact = field(default_factory=SchwartzLike)
    marked_points: tuple[MarkedPoint, ...] = ()
    integrability: tuple[str, ...] = ("L1", "L2")
    name: str = ""

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if isinstance(self.decay, Compact):
            inside = (x >= self.decay.lo) & (x <= self.decay.hi)
            return np.where(inside, self.eval(x), 0.0)
        return self.eval(x)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        pts = [m.x0 for m in self.marked_points]
        if isinstance(self.decay, Compact):
            pts += [self.decay.lo, self.decay.hi]
        return tuple(pts)

    def marked(self, x0: float) -> MarkedPoint | None:
        for m in self.marked_points:
            if m.x0 == x0:
                return m
        return None


def integrate_target(g: Callable, target: TargetFunction, tol=DEFAULT_TOL, budget=DEFAULT_BUDGET) -> QuadratureResult:
    """Integrate ``g`` (already multiplied by the target) over the target's support."""
    if isinstance(target.decay, Compact):
        return integrate_interval(g, target.decay.lo, target.decay.hi, tol, budget, breakpoints=target.breakpoints)
    return integrate_line(g, tol, budget, breakpoints=target.breakpoints)


def inner_product(f: Callable, g: Callable, tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET, breakpoints=()) -> complex:
    """``(1/pi) * integral f(x) conj(g(x)) dx`` over the real line."""
    r = integrate_line(lambda x: f(x) * np.conj(g(x)), tol * np.pi, budget, breakpoints)
    return r.value / np.pi


def fourier_coefficient(system: BasisSystem, f: TargetFunction, k: int, tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET) -> complex:
    """``c_k = (1/pi) * integral f(x) conj(Phi_k(x)) dx``."""
    lo, hi = system.index_range
    if not lo <= k <= hi:
        raise IndexOutOfRange(f"coefficient index {k} outside available {lo}..{hi}")
    r = integrate_target(lambda x: f(x) * np.conj(phi(system, k, x)), f, tol * np.pi, budget)
    return complex(r.value) / np.pi


def fourier_coefficients(system: BasisSystem, f: TargetFunction, k_min: int, k_max: int, tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    return np.array([fourier_coefficient(system, f, k, tol, budget) for k in range(k_min, k_max + 1)])
