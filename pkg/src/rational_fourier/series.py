"""Partial sums of rational Fourier series and the convergence experiments.

``S_n`` always means ``S_{n,n+1}``, i.e. indices ``k = -n..n-1``.  The
kernel route integrates ``f(t) D(t, x)`` after folding ``t = x +- s`` onto
``s > 0``; the kernel is bounded on the diagonal, so the folded integrand
has no singularity, and a jump of ``f`` at ``x`` sits on the endpoint
``s = 0`` where the rule never samples.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .basis import BasisSystem, phi_table
from .errors import IndexOutOfRange, InvalidExponent
from .kernels import dirichlet_closed, dirichlet_sine, phase_density, y_mu
from .poles import PoleSequence, inverse_cube_sum, sigma_n, varsigma_n
from .quadrature import (
    DEFAULT_BUDGET,
    DEFAULT_TOL,
    Compact,
    TargetFunction,
    fourier_coefficients,
    integrate_halfline,
    integrate_interval,
    integrate_target,
)


def _real_if_exact(value):
    value = complex(value)
    return value.real if value.imag == 0 else value


def partial_sum(
    system: BasisSystem,
    f: TargetFunction,
    n: int,
    x: float,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
):
    """``S_n(f; x) = (1/pi) * integral f(t) D_{n,n+1}(t, x) dt``.

    Uses the sine kernel for conjugate-paired systems and the exponential
    kernel otherwise.
    """
    if n < 1:
        raise ValueError(f"partial sums start at n = 1, got {n}")
    x = float(x)
    if system.conjugate_paired:
        if n > len(system.upper):
            raise IndexOutOfRange(f"S_{n} needs {n} upper poles, have {len(system.upper)}")

        def ker(t):
            return dirichlet_sine(system.upper, n, x, t)
    else:

        def ker(t):
            return dirichlet_closed(system, n, n + 1, t, x)

    def folded(s):
        right = x + s
        left = x - s
        return f(right) * ker(right) + f(left) * ker(left)

    bps = sorted({abs(b - x) for b in f.breakpoints if b != x})
    if isinstance(f.decay, Compact):
        s_max = max(f.decay.hi - x, x - f.decay.lo)
        if s_max <= 0:
            return 0.0
        r = integrate_interval(folded, 0.0, s_max, tol * np.pi, budget, breakpoints=bps)
    else:
        r = integrate_halfline(folded, 0.0, tol * np.pi, budget, breakpoints=bps)
    return _real_if_exact(r.value / np.pi)


def partial_sum_via_coefficients(system: BasisSystem, coeffs: Sequence[complex], n: int, x):
    """``sum c_k Phi_k(x)`` with ``coeffs`` ordered ``k = -n..n-1``."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (2 * n,):
        raise IndexOutOfRange(f"expected {2 * n} coefficients for S_{n}, got {coeffs.shape}")
    table = phi_table(system, -n, n - 1, np.asarray(x, dtype=float))
    out = np.tensordot(coeffs, table, axes=1)
    return out[()] if np.ndim(out) == 0 else out


def lp_error(
    system: BasisSystem,
    f: TargetFunction,
    n: int,
    p: float = 2.0,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
) -> float:
    """``(integral |f - S_n f|^p dx)^(1/p)``.

    ``S_n f`` is assembled from its ``2n`` coefficients; this equals the
    kernel route and avoids one adaptive integral per outer node.
    """
    if not p > 1:
        raise InvalidExponent(f"p must exceed 1, got {p}")
    coeffs = fourier_coefficients(system, f, -n, n - 1, tol, budget)
    resid = lambda x: np.abs(f(x) - partial_sum_via_coefficients(system, coeffs, n, x)) ** p
    r = integrate_target(resid, _unbounded(f), tol, budget)
    return float(r.value) ** (1.0 / p)


def _unbounded(f: TargetFunction) -> TargetFunction:
    # S_n f is not compactly supported even when f is
    if isinstance(f.decay, Compact):
        return TargetFunction(f.eval, marked_points=f.marked_points, name=f.name)
    return f


# ---------------------------------------------------------------------------
# experiment reports
# ---------------------------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    return str(v)


@dataclass
class ExperimentReport:
    """Rows of one experiment, one per ``n``, plus free-form metadata.

    Only the rows go to CSV; the header line is ``columns``.
    """

    columns: tuple[str, ...]
    rows: list[dict] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def column(self, name: str) -> list:
        return [r[name] for r in self.rows]

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([_fmt(row.get(c)) for c in self.columns])
        return buf.getvalue()

    def to_csv(self, path) -> None:
        Path(path).write_bytes(self.to_csv_text().encode("utf-8"))


POINTWISE_COLUMNS = ("n", "sigma", "varsigma", "ratio", "value_re", "value_im", "midpoint", "deviation")


def _pointwise(system, f, x0, n_list, tol, budget, kind):
    if not system.conjugate_paired:
        raise ValueError("pointwise experiments are defined for conjugate-paired systems")
    marked = f.marked(x0)
    midpoint = marked.midpoint if marked is not None else float(np.real(f(x0)))
    rep = ExperimentReport(
        POINTWISE_COLUMNS,
        metadata={"experiment": kind, "function": f.name, "x0": x0, "tol": tol, "poles": system.upper.name},
    )
    for n in n_list:
        s = complex(partial_sum(system, f, n, x0, tol, budget))
        sig = sigma_n(system.upper, n)
        vsig = varsigma_n(system.upper, n)
        rep.rows.append(
            {
                "n": n,
                "sigma": sig,
                "varsigma": vsig,
                "ratio": vsig / sig,
                "value_re": s.real,
                "value_im": s.imag,
                "midpoint": midpoint,
                "deviation": abs(s - midpoint),
            }
        )
    return rep


def jump_convergence(system, f: TargetFunction, x0: float, n_list, tol=DEFAULT_TOL, budget=DEFAULT_BUDGET) -> ExperimentReport:
    """``S_n(f; x0)`` against the midpoint of the one-sided limits at ``x0``."""
    return _pointwise(system, f, x0, n_list, tol, budget, "jump")


def dini_convergence(system, f: TargetFunction, x0: float, n_list, tol=DEFAULT_TOL, budget=DEFAULT_BUDGET) -> ExperimentReport:
    """Same rows as :func:`jump_convergence`; the Dini condition at ``x0`` is
    the caller's assertion and is only recorded."""
    rep = _pointwise(system, f, x0, n_list, tol, budget, "dini")
    rep.metadata["dini_condition"] = "asserted by caller"
    return rep


# ---------------------------------------------------------------------------
# probes of the oscillatory limits
# ---------------------------------------------------------------------------


def signed_y_mu(upper: PoleSequence, n: int, x: float, y, sign: int = 1):
    """``y * mu_n(sign*y; x)`` as a function of ``y > 0``."""
    return sign * y_mu(upper, n, x, sign * np.asarray(y, dtype=float))


def riemann_lebesgue_probe(
    upper: PoleSequence,
    weight: Callable,
    n_list,
    x: float = 0.0,
    sign: int = 1,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
) -> list[float]:
    """``integral_0^inf weight(y) sin(y mu_n(+-y; x)) dy`` for each ``n``."""
    out = []
    for n in n_list:
        g = lambda y, n=n: weight(y) * np.sin(signed_y_mu(upper, n, x, y, sign))
        out.append(float(integrate_halfline(g, 0.0, tol, budget).value))
    return out


def sine_integral_probe(
    upper: PoleSequence,
    n_list,
    x: float = 0.0,
    delta: float = 1.0,
    sign: int = 1,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
) -> list[float]:
    """``integral_0^delta sin(y mu_n(+-y; x)) / y dy`` for each ``n``; tends to pi/2."""
    if not delta > 0:
        raise ValueError("delta must be positive")
    out = []
    for n in n_list:
        g = lambda y, n=n: np.sin(signed_y_mu(upper, n, x, y, sign)) / y
        out.append(float(integrate_interval(g, 0.0, delta, tol, budget).value))
    return out


# ---------------------------------------------------------------------------
# derivative bounds on mu
# ---------------------------------------------------------------------------

BOUND_NAMES = (
    "ymu_prime_lower",
    "mu_lower",
    "ymu_second_upper",
    "mu_prime_upper",
    "mu_second_upper",
)
FINITE_DIFFERENCE_BOUNDS = frozenset({"mu_prime_upper", "mu_second_upper"})


@dataclass
class BoundCheckReport:
    """Signed margins of the five inequalities; nonnegative means satisfied.

    Each margin array has shape ``(2, len(x_grid), len(y_grid))``; axis 0 is
    the sign of ``y`` (``+y`` first).
    """

    n: int
    x_grid: np.ndarray
    y_grid: np.ndarray
    margins: dict
    sigma: float
    varsigma: float

    def worst(self) -> dict:
        return {k: float(np.min(v)) if v.size else 0.0 for k, v in self.margins.items()}

    def violations(self, slack: float = 1e-9, fd_slack: float = 1e-3) -> list[tuple[str, float]]:
        out = []
        for name in BOUND_NAMES:
            s = fd_slack if name in FINITE_DIFFERENCE_BOUNDS else slack
            w = self.worst()[name]
            if w < -s:
                out.append((name, w))
        return out

    def passed(self, slack: float = 1e-9, fd_slack: float = 1e-3) -> bool:
        return not self.violations(slack, fd_slack)


def bound_check(upper: PoleSequence, n: int, x_grid, y_grid, fd_step: float = 1e-5) -> BoundCheckReport:
    """Evaluate the lower bounds on ``[y mu]'`` and ``mu`` and the upper
    bounds on ``[y mu]''``, ``mu'`` and ``mu''`` over a grid with ``y > 0``.

    ``mu'`` and ``mu''`` come from central differences with step ``fd_step``.
    """
    xg = np.asarray(x_grid, dtype=float)
    yg = np.asarray(y_grid, dtype=float)
    if np.any(yg <= 0):
        raise ValueError("y grid must be strictly positive")
    if np.any(yg - fd_step <= 0):
        raise ValueError("y grid must stay clear of 0 by more than fd_step")
    poles = upper.prefix(n)
    sig = sigma_n(upper, n)
    vsig = varsigma_n(upper, n)
    cube = inverse_cube_sum(upper, n)
    X, Y = np.meshgrid(xg, yg, indexing="ij")
    lower_scale = sig / (1.0 + (np.abs(X) + Y) ** 2)
    h = fd_step
    margins = {k: [] for k in BOUND_NAMES}
    for sign in (1, -1):
        d1, d2 = phase_density(poles, X + sign * Y)
        ymu_p = 2.0 * d1
        ymu_pp = sign * 2.0 * d2

        def m(y):
            return signed_y_mu(upper, n, X, y, sign) / y

        m0 = m(Y)
        mp, mm = m(Y + h), m(Y - h)
        mu_p = (mp - mm) / (2 * h)
        mu_pp = (mp - 2 * m0 + mm) / (h * h)
        margins["ymu_prime_lower"].append(np.abs(ymu_p) - lower_scale)
        margins["mu_lower"].append(np.abs(m0) - lower_scale)
        margins["ymu_second_upper"].append(vsig - np.abs(ymu_pp))
        margins["mu_prime_upper"].append(vsig - np.abs(mu_p))
        margins["mu_second_upper"].append((8.0 / 3.0) * cube - np.abs(mu_pp))
    margins = {k: np.stack(v) for k, v in margins.items()}
    return BoundCheckReport(n, xg, yg, margins, sig, vsig)


def is_strictly_decreasing(values) -> bool:
    v = list(values)
    return all(b < a for a, b in zip(v, v[1:]))


def pi_half_gap(values) -> list[float]:
    return [abs(v - math.pi / 2) for v in values]
