import numpy as np
import pytest
from scipy.integrate import quad

from rational_fourier import BasisSystem, HalfPlane, PoleSequence, phi

MIXED_POLES = [2j, 1 + 1j, -1 + 2j, 3j, 0.5 + 1.5j, -0.5 + 1j, 2 + 2.5j, -1.5 + 0.8j, 0.3 + 1.2j]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def mixed_system():
    return BasisSystem.paired(PoleSequence(MIXED_POLES))


def random_system(rng, count=9, paired=True):
    up = PoleSequence(rng.uniform(-2, 2, count) + 1j * rng.uniform(0.5, 3, count))
    if paired:
        return BasisSystem.paired(up)
    low = PoleSequence(rng.uniform(-2, 2, count) - 1j * rng.uniform(0.5, 3, count), HalfPlane.LOWER)
    return BasisSystem(up, low)


# ---------------------------------------------------------------------------
# oracles independent of the package's own summation and quadrature paths
# ---------------------------------------------------------------------------


def direct_kernel(system, ks, x, t):
    """sum over ks of conj(Phi_k(x)) Phi_k(t), one scalar phi call at a time."""
    return sum(np.conj(phi(system, k, x)) * phi(system, k, t) for k in ks)


def phase_integrand(poles, u):
    return sum(2 * p.imag / ((u - p.real) ** 2 + p.imag**2) for p in poles)


def quad_phase(poles, lo, hi):
    """Numeric integral of the summed phase density from lo to hi."""
    val, _ = quad(lambda u: phase_integrand(poles, u), lo, hi, epsabs=1e-14, epsrel=1e-13, limit=400)
    return val


_ACCEPTANCE = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
