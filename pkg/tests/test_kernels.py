import math

import numpy as np
import pytest

from rational_fourier import BasisSystem, PoleSequence, phi
from rational_fourier.errors import DegenerateArguments, IndexOutOfRange, ZeroWidth
from rational_fourier.kernels import (
    KernelMethod,
    cd_kernel_minus,
    cd_kernel_plus,
    dirichlet_closed,
    dirichlet_direct,
    dirichlet_sine,
    kernel,
    mu,
    mu_derivatives,
    mu_limit,
    phase_increment,
    y_mu,
)
from rational_fourier.poles import HalfPlane

from conftest import direct_kernel, phase_integrand, quad_phase, random_system

ONE = PoleSequence([2j])
ONE_SYS = BasisSystem.paired(ONE)


# ---------------------------------------------------------------------------
# Christoffel-Darboux identities
# ---------------------------------------------------------------------------


def test_cd_plus_empty_sum():
    assert cd_kernel_plus(ONE, 0, 0.3 + 0.1j, -0.7 + 2j) == 0


def test_cd_minus_empty_sum():
    assert cd_kernel_minus(ONE_SYS.lower, 1, 0.3, -0.7) == 0


def test_cd_plus_single_term():
    expected = np.conj(phi(ONE_SYS, 0, 1.0)) * phi(ONE_SYS, 0, 0.0)
    assert cd_kernel_plus(ONE, 1, 0.0, 1.0) == pytest.approx(expected, abs=1e-15)


def test_cd_minus_single_term():
    expected = np.conj(phi(ONE_SYS, -1, 1.0)) * phi(ONE_SYS, -1, 0.0)
    assert cd_kernel_minus(ONE_SYS.lower, 2, 0.0, 1.0) == pytest.approx(expected, abs=1e-15)


def test_cd_plus_two_poles():
    s = BasisSystem.paired(PoleSequence([2j, 1 + 1j]))
    expected = direct_kernel(s, [0, 1], -0.7, 0.3)
    assert abs(cd_kernel_plus(s.upper, 2, 0.3, -0.7) - expected) < 1e-12


def test_cd_random_agreement(rng):
    for _ in range(20):
        s = random_system(rng, paired=False)
        n = int(rng.integers(0, 9))
        m = int(rng.integers(1, 7))
        z = complex(rng.normal() * 3, rng.uniform(-0.3, 2))
        zeta = complex(rng.normal() * 3, rng.uniform(-0.3, 2))
        plus = direct_kernel(s, range(0, n), zeta, z)
        minus = direct_kernel(s, range(-m + 1, 0), zeta, z)
        assert abs(cd_kernel_plus(s.upper, n, z, zeta) - plus) <= 1e-11 * max(1, abs(plus))
        assert abs(cd_kernel_minus(s.lower, m, z, zeta) - minus) <= 1e-11 * max(1, abs(minus))


def test_cd_degenerate():
    with pytest.raises(DegenerateArguments):
        cd_kernel_plus(ONE, 1, 0.5 + 0.2j, 0.5 - 0.2j)


# ---------------------------------------------------------------------------
# Dirichlet kernel
# ---------------------------------------------------------------------------


def test_direct_empty_and_single():
    assert dirichlet_direct(ONE_SYS, 0, 1, 0.2, 1.3) == 0
    expected = np.conj(phi(ONE_SYS, 0, 0.2)) * phi(ONE_SYS, 0, 1.3)
    assert dirichlet_direct(ONE_SYS, 1, 1, 0.2, 1.3) == pytest.approx(expected, abs=1e-15)


def test_direct_paired_is_real():
    v = dirichlet_direct(ONE_SYS, 1, 2, 0.0, 1.0)
    assert abs(v.imag) < 1e-15
    # (1+i)... hand sum: conj(Phi_0(0))Phi_0(1) + conj(Phi_-1(0))Phi_-1(1) = 2*Re(...)
    assert v.real == pytest.approx(0.8, abs=1e-15)


def test_direct_insufficient_poles():
    with pytest.raises(IndexOutOfRange):
        dirichlet_direct(ONE_SYS, 2, 1, 0.0, 1.0)
    with pytest.raises(IndexOutOfRange):
        dirichlet_direct(ONE_SYS, 1, 3, 0.0, 1.0)


def test_closed_hand_value():
    # upper phase arctan(1) = pi/4, lower -pi/4  ->  sin(pi/2) / 2
    assert dirichlet_closed(ONE_SYS, 1, 2, 0.0, 2.0) == pytest.approx(0.5, abs=1e-15)
    # phase cross-check against numeric quadrature of the density
    assert 2 * phase_increment([2j], 0.0, 2.0) == pytest.approx(quad_phase([2j], 0.0, 2.0), abs=1e-13)
    assert quad_phase([2j], 0.0, 2.0) == pytest.approx(math.pi / 2, abs=1e-13)


def test_closed_empty():
    assert dirichlet_closed(ONE_SYS, 0, 1, 0.4, -1.0) == 0


def test_closed_matches_direct_paired(rng):
    for _ in range(10):
        s = random_system(rng)
        n = int(rng.integers(1, 7))
        x = rng.uniform(-5, 5, 30)
        t = x + 10 ** rng.uniform(-3, 1, 30) * rng.choice([-1, 1], 30)
        np.testing.assert_allclose(dirichlet_closed(s, n, n + 1, x, t), dirichlet_direct(s, n, n + 1, x, t), atol=1e-10, rtol=0)


def test_closed_matches_direct_unpaired(rng):
    # orientation fixed by the direct sum, not by the conjugate exponential form
    for _ in range(10):
        s = random_system(rng, paired=False)
        n = int(rng.integers(0, 8))
        m = int(rng.integers(1, 9))
        x = rng.uniform(-5, 5, 30)
        t = x + 10 ** rng.uniform(-3, 1, 30) * rng.choice([-1, 1], 30)
        direct = np.array([direct_kernel(s, range(-m + 1, n), xi, ti) for xi, ti in zip(x, t)])
        np.testing.assert_allclose(dirichlet_closed(s, n, m, x, t), direct, atol=1e-10, rtol=0)


def test_closed_diagonal(rng):
    s = random_system(rng, paired=False)
    for x in (-2.0, 0.0, 1.7):
        exact = direct_kernel(s, range(-4, 5), x, x)
        assert abs(dirichlet_closed(s, 5, 5, x, x) - exact) < 1e-12
        assert abs(dirichlet_closed(s, 5, 5, x, x + 3e-7) - direct_kernel(s, range(-4, 5), x, x + 3e-7)) < 1e-10
    with pytest.raises(DegenerateArguments):
        dirichlet_closed(s, 5, 5, 1.0, 1.0, allow_diagonal=False)


def test_sine_hand_values():
    assert dirichlet_sine(ONE, 1, 0.0, 2.0) == pytest.approx(0.5, abs=1e-15)
    assert dirichlet_sine(ONE, 1, 0.0, 0.0) == pytest.approx(1.0, abs=1e-15)


def test_sine_matches_direct(rng):
    for _ in range(10):
        s = random_system(rng)
        n = int(rng.integers(1, 8))
        x = rng.uniform(-5, 5, 40)
        t = x + 10 ** rng.uniform(-8, 1, 40) * rng.choice([-1, 1], 40)
        t[:5] = x[:5]
        d = dirichlet_direct(s, n, n + 1, x, t)
        assert np.max(np.abs(d.imag)) < 1e-10
        np.testing.assert_allclose(dirichlet_sine(s.upper, n, x, t), d.real, atol=1e-10, rtol=0)


def test_kernel_provenance():
    ev = kernel(ONE_SYS, 1, 2, 0.0, 2.0, "sine_form")
    assert ev.method is KernelMethod.SINE_FORM and ev.value == pytest.approx(0.5)
    assert kernel(ONE_SYS, 1, 2, 0.0, 0.0).method is KernelMethod.DIAGONAL_LIMIT
    assert kernel(ONE_SYS, 1, 2, 0.0, 0.0, KernelMethod.DIRECT_SUM).method is KernelMethod.DIRECT_SUM


# ---------------------------------------------------------------------------
# phase function
# ---------------------------------------------------------------------------


def test_mu_hand_value():
    assert mu(ONE, 1, 0.0, 2.0) == pytest.approx(math.pi / 4, abs=1e-15)
    assert mu(ONE, 0, 0.3, 1.0) == 0
    with pytest.raises(ZeroWidth):
        mu(ONE, 1, 0.0, 0.0)


def test_mu_shrinking_width_tends_to_density():
    # oracle: quadrature of the density over [0, y], divided by y
    vals = [quad_phase([2j], 0.0, y) / y for y in (1e-1, 1e-2, 1e-3)]
    assert abs(vals[-1] - 1.0) < 1e-3
    assert mu_limit(ONE, 1, 0.0) == pytest.approx(1.0, abs=1e-15)
    assert mu(ONE, 1, 0.0, 1e-9) == pytest.approx(1.0, abs=1e-12)


def test_mu_matches_quadrature(rng):
    up = random_system(rng).upper
    for x, y in zip(rng.uniform(-4, 4, 12), rng.uniform(-5, 5, 12)):
        assert mu(up, 6, x, y) == pytest.approx(quad_phase(up.poles[:6], x, x + y) / y, abs=1e-10)


def test_mu_derivatives_hand_values():
    d = mu_derivatives(ONE, 1, 0.0, 0.0)
    assert d.d_y_of_y_mu == pytest.approx(1.0)
    assert d.d2_y_of_y_mu == pytest.approx(0.0)
    assert mu_derivatives(ONE, 1, 0.0, 2.0).d_y_of_y_mu == pytest.approx(0.5)


def test_mu_derivatives_finite_difference(rng):
    up = random_system(rng).upper
    h = 1e-5
    for x, y in zip(rng.uniform(-4, 4, 10), rng.uniform(-4, 4, 10)):
        d = mu_derivatives(up, 7, x, y)
        fd1 = (y_mu(up, 7, x, y + h) - y_mu(up, 7, x, y - h)) / (2 * h)
        fd2 = (mu_derivatives(up, 7, x, y + h).d_y_of_y_mu - mu_derivatives(up, 7, x, y - h).d_y_of_y_mu) / (2 * h)
        assert d.d_y_of_y_mu == pytest.approx(fd1, abs=1e-8)
        assert d.d2_y_of_y_mu == pytest.approx(fd2, abs=1e-7)
        assert d.d_y_of_y_mu == pytest.approx(phase_integrand(up.poles[:7], x + y), rel=1e-14)


def test_phase_positive(rng):
    for _ in range(5):
        up = random_system(rng, count=20).upper
        x = rng.uniform(-10, 10, 50)
        y = 10 ** rng.uniform(-6, 2, 50)
        for n in (1, 5, 20):
            assert np.all(mu(up, n, x, y) > 0)
            assert np.all(mu(up, n, x, -y) > 0)


def test_phase_does_not_wrap():
    # 300 constant poles accumulate far more than pi of phase
    up = PoleSequence([2j] * 300)
    assert y_mu(up, 300, -50.0, 100.0) == pytest.approx(quad_phase([2j], -50, 50) * 300, rel=1e-12)
