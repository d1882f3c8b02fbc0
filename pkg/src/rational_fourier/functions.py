"""Named target functions used by the experiment runner and the demos."""

from __future__ import annotations

import numpy as np

from .basis import BasisSystem, phi_table
from .quadrature import AlgebraicOrder, Compact, MarkedPoint, SchwartzLike, TargetFunction


def lorentzian(scale: float = 1.0) -> TargetFunction:
    return TargetFunction(
        lambda x: 1.0 / (1.0 + (x / scale) ** 2),
        AlgebraicOrder(2.0),
        integrability=("L1", "Lp"),
        name="lorentzian",
    )


def gaussian(scale: float = 1.0) -> TargetFunction:
    return TargetFunction(lambda x: np.exp(-((x / scale) ** 2)), SchwartzLike(), integrability=("L1", "Lp", "BV"), name="gaussian")


def signed_exp(x0: float = 0.0) -> TargetFunction:
    """``sign(x - x0) * exp(-|x - x0|)``; jump of height 2 at ``x0``."""
    return TargetFunction(
        lambda x: np.sign(x - x0) * np.exp(-np.abs(x - x0)),
        SchwartzLike(),
        marked_points=(MarkedPoint(x0, -1.0, 1.0),),
        integrability=("L1", "Lp", "BV"),
        name="signed_exp",
    )


def signed_gaussian(x0: float = 0.0) -> TargetFunction:
    return TargetFunction(
        lambda x: np.sign(x - x0) * np.exp(-((x - x0) ** 2)),
        SchwartzLike(),
        marked_points=(MarkedPoint(x0, -1.0, 1.0),),
        integrability=("L1", "Lp", "BV"),
        name="signed_gaussian",
    )


def box(lo: float = -1.0, hi: float = 1.0, height: float = 1.0) -> TargetFunction:
    return TargetFunction(
        lambda x: np.full_like(x, height, dtype=float),
        Compact(lo, hi),
        marked_points=(MarkedPoint(lo, 0.0, height), MarkedPoint(hi, height, 0.0)),
        integrability=("L1", "Lp", "BV"),
        name="box",
    )


def basis_combination(system: BasisSystem, coeffs: dict) -> TargetFunction:
    """Finite sum ``sum coeffs[k] * Phi_k``; reproduced exactly by ``S_n`` once
    ``-n <= min(k)`` and ``max(k) <= n - 1``."""
    ks = sorted(coeffs)
    c = np.array([coeffs[k] for k in ks], dtype=complex)
    lo, hi = ks[0], ks[-1]

    def ev(x):
        table = phi_table(system, lo, hi, x)
        return np.tensordot(c, table[[k - lo for k in ks]], axes=1)

    return TargetFunction(ev, AlgebraicOrder(1.0), integrability=("L2", "Lp"), name="basis_combination")


REGISTRY = {
    "lorentzian": lorentzian,
    "gaussian": gaussian,
    "signed_exp": signed_exp,
    "signed_gaussian": signed_gaussian,
    "box": box,
}


def make_function(name: str, **params) -> TargetFunction:
    try:
        factory = REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown function {name!r}; choose from {sorted(REGISTRY)}") from None
    return factory(**params)
