"""Pole sequences in the upper or lower half-plane and their diagnostics.

A :class:`PoleSequence` is a finite prefix of a conceptually infinite
sequence.  The two diagnostics used throughout are

    sigma_n    = sum_{k<n} |Im a_k| / (1 + |a_k|^2)
    varsigma_n = sum_{k<n} 1 / (Im a_k)^2

Divergence of ``sigma_n`` is the closure (Blaschke-type) condition;
boundedness of ``varsigma_n / sigma_n`` is the extra hypothesis used by
the pointwise convergence results.  Neither can be decided from a finite
prefix, so :func:`admissibility` only reports trends.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import ConfigParseError, EmptySequence, PrefixTooShort, WrongHalfPlane


class HalfPlane(enum.Enum):
    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True, eq=False)
class PoleSequence:
    """Ordered complex poles confined to one open half-plane.

    Parameters
    ----------
    poles : array_like of complex
        The prefix ``a_0, a_1, ...`` (or ``b_1, b_2, ...`` for the lower
        sequence; storage is always zero-based).
    half_plane : HalfPlane
        Which open half-plane the poles are declared to lie in.
    """

    poles: np.ndarray
    half_plane: HalfPlane = HalfPlane.UPPER
    name: str = field(default="", compare=False)

    def __post_init__(self):
        arr = np.array(self.poles, dtype=complex).reshape(-1)
        arr.flags.writeable = False
        object.__setattr__(self, "poles", arr)

    def __len__(self):
        return self.poles.size

    def __getitem__(self, k):
        return self.poles[k]

    def __iter__(self):
        return iter(self.poles)

    def __eq__(self, other):
        if not isinstance(other, PoleSequence):
            return NotImplemented
        return self.half_plane is other.half_plane and np.array_equal(self.poles, other.poles)

    __hash__ = None

    def prefix(self, n: int) -> np.ndarray:
        if n < 0:
            raise ValueError(f"prefix length must be nonnegative, got {n}")
        if n > len(self):
            raise PrefixTooShort(n, len(self))
        return self.poles[:n]

    def conjugate(self) -> "PoleSequence":
        other = HalfPlane.LOWER if self.half_plane is HalfPlane.UPPER else HalfPlane.UPPER
        return PoleSequence(np.conj(self.poles), other, name=f"conj({self.name})" if self.name else "")

    @cached_property
    def _sigma_cumulative(self) -> np.ndarray:
        terms = np.abs(self.poles.imag) / (1.0 + np.abs(self.poles) ** 2)
        return np.concatenate(([0.0], np.cumsum(terms)))

    @cached_property
    def _varsigma_cumulative(self) -> np.ndarray:
        terms = 1.0 / self.poles.imag**2
        return np.concatenate(([0.0], np.cumsum(terms)))


def validate(seq: PoleSequence) -> PoleSequence:
    """Check that every pole lies strictly inside the declared half-plane.

    Returns the sequence unchanged on success.

    Raises
    ------
    EmptySequence
        If the sequence has no poles.
    WrongHalfPlane
        Listing every offending index (real poles included).
    """
    if len(seq) == 0:
        raise EmptySequence("pole sequence is empty")
    im = seq.poles.imag
    if seq.half_plane is HalfPlane.UPPER:
        bad = np.flatnonzero(~(im > 0))
    else:
        bad = np.flatnonzero(~(im < 0))
    if bad.size:
        raise WrongHalfPlane(bad.tolist(), seq.half_plane)
    return seq


def sigma_n(seq: PoleSequence, n: int) -> float:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > len(seq):
        raise PrefixTooShort(n, len(seq))
    return float(seq._sigma_cumulative[n])


def varsigma_n(seq: PoleSequence, n: int) -> float:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > len(seq):
        raise PrefixTooShort(n, len(seq))
    return float(seq._varsigma_cumulative[n])


def inverse_cube_sum(seq: PoleSequence, n: int) -> float:
    """``sum_{k<n} 1/|Im a_k|^3``, the scale of the second-derivative bound on mu."""
    return float(np.sum(1.0 / np.abs(seq.prefix(n).imag) ** 3))


@dataclass(frozen=True)
class AdmissibilityReport:
    n_max: int
    sigma: list
    varsigma: list
    ratio: list
    min_abs_im: float
    sigma_diverges_trend: bool
    ratio_bounded: bool


def admissibility(
    seq: PoleSequence,
    n_max: int,
    sigma_threshold: float = 10.0,
    ratio_bound: float = 10.0,
) -> AdmissibilityReport:
    """Finite-prefix evidence for the pole conditions behind pointwise convergence.

    The series are reported for ``n = 1..n_max``.  ``min_abs_im`` stands in
    for "no limit points on the real axis", which no finite prefix can
    settle; it is reported, not judged.
    """
    validate(seq)
    if n_max > len(seq):
        raise PrefixTooShort(n_max, len(seq))
    sig = seq._sigma_cumulative[1 : n_max + 1]
    vsig = seq._varsigma_cumulative[1 : n_max + 1]
    ratio = vsig / sig
    if n_max == 0:
        trend = False
        min_abs_im = float("inf")
    else:
        trend = bool(sig[-1] >= sigma_threshold and np.all(np.diff(sig) > 0))
        min_abs_im = float(np.min(np.abs(seq.prefix(n_max).imag)))
    bounded = bool(ratio.size == 0 or np.max(ratio) <= ratio_bound)
    return AdmissibilityReport(
        n_max=n_max,
        sigma=sig.tolist(),
        varsigma=vsig.tolist(),
        ratio=ratio.tolist(),
        min_abs_im=min_abs_im,
        sigma_diverges_trend=trend,
        ratio_bounded=bounded,
    )


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def constant_poles(count: int, re: float = 0.0, im: float = 2.0) -> PoleSequence:
    return PoleSequence(np.full(count, complex(re, im)), name=f"constant({re},{im})")


def geometric_im(count: int, base: float = 0.5, scale: float = 1.0) -> PoleSequence:
    """``a_k = i * scale * base**k``; ``sigma_n`` converges for ``base < 1``."""
    k = np.arange(count)
    return PoleSequence(1j * scale * base**k, name=f"geometric_im({base})")


def power_law(
    count: int,
    alpha: float = 0.5,
    beta: float = 0.75,
    re_scale: float = 1.0,
    im_scale: float = 1.0,
) -> PoleSequence:
    """``a_k = re_scale*(k+1)**alpha + i*im_scale*(k+1)**beta``.

    With ``0 <= alpha <= 3/4`` and ``1/2 < beta <= 1`` this is the growing
    pole family for which the convergence hypotheses are claimed to hold.
    """
    k1 = np.arange(1, count + 1, dtype=float)
    return PoleSequence(
        re_scale * k1**alpha + 1j * im_scale * k1**beta,
        name=f"power_law({alpha},{beta})",
    )


def random_poles(
    rng: np.random.Generator,
    count: int,
    re_range=(-2.0, 2.0),
    im_range=(0.5, 3.0),
) -> PoleSequence:
    re = rng.uniform(*re_range, size=count)
    im = rng.uniform(*im_range, size=count)
    return PoleSequence(re + 1j * im, name="random")


def parse_poles(text: str, half_plane: HalfPlane = HalfPlane.UPPER, name: str = "") -> PoleSequence:
    """Parse ``re im`` pairs, one per line.  Blank lines and ``#`` comments are skipped."""
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ConfigParseError(lineno, f"expected 're im', got {raw.strip()!r}")
        try:
            values.append(complex(float(parts[0]), float(parts[1])))
        except ValueError:
            raise ConfigParseError(lineno, f"not a pair of floats: {raw.strip()!r}") from None
    return PoleSequence(np.array(values, dtype=complex), half_plane, name=name)


def load_poles(path, half_plane: HalfPlane = HalfPlane.UPPER) -> PoleSequence:
    path = Path(path)
    return parse_poles(path.read_text(), half_plane, name=path.name)


def format_poles(seq: PoleSequence) -> str:
    return "".join(f"{float(p.real)!r} {float(p.imag)!r}\n" for p in seq.poles)
