"""Orthonormal rational functions with fixed poles off the real axis.

Evaluation of the two-sided system ``Phi_n`` (n in Z), its
Christoffel-Darboux and Dirichlet kernels in closed form, Fourier
coefficients and partial sums of real-line functions, and numerical
probes of the convergence behaviour of those partial sums.
"""

from .basis import BasisSystem, blaschke_minus, blaschke_plus, chi, phi, phi_table
from .errors import (
    ConfigParseError,
    DegenerateArguments,
    EmptySequence,
    IndexOutOfRange,
    InvalidExponent,
    PoleHit,
    PrefixTooShort,
    RationalFourierError,
    SuiteFailure,
    ToleranceNotMet,
    WrongHalfPlane,
    ZeroWidth,
)
from .kernels import (
    KernelEvaluation,
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
)
from .poles import (
    AdmissibilityReport,
    HalfPlane,
    PoleSequence,
    admissibility,
    constant_poles,
    geometric_im,
    power_law,
    sigma_n,
    validate,
    varsigma_n,
)
from .quadrature import (
    QuadratureResult,
    TargetFunction,
    fourier_coefficient,
    inner_product,
    integrate_halfline,
    integrate_interval,
    integrate_line,
)
from .series import (
    ExperimentReport,
    bound_check,
    dini_convergence,
    jump_convergence,
    lp_error,
    partial_sum,
    partial_sum_via_coefficients,
    riemann_lebesgue_probe,
    sine_integral_probe,
)

__version__ = "0.1.0"
