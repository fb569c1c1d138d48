"""Efficiency functionals for fractional-diffusive foraging.

Evaluate the stationary-prey efficiency functionals (Fourier closed form),
their analytic s-derivatives, the very-long-search limit and its dilation
thresholds, and locate optimal/pessimal Levy exponents; every closed-form
route is cross-checked by independent brute-force oracles.
"""
__version__ = "0.1.0"

from .spectra import (  # noqa: F401
    DomainShape,
    SpectralDensity,
    ball,
    band_density,
    chi_hat_ball,
    chi_hat_interval,
    interval,
    uniform_prey,
)
from .semigroup import k_factor, multiplier, sigma, sigma_prime, theta  # noqa: F401
from .functionals import (  # noqa: F401
    EfficiencyQuery,
    LongTimeQuery,
    eval_efficiency,
    eval_J_infty,
    eval_L_surface,
    eval_scaled,
    f_ratio,
    g_of_s,
    g_prime,
    g_scaled,
    j_infty,
    stationary_overlap,
)
from .calculus import (  # noqa: F401
    DerivativeBreakdown,
    ThresholdReport,
    classify_support,
    deriv_s_J_infty,
    deriv_s_g,
    deriv_s_unnormalized,
    thresholds,
)
from .optimize import (  # noqa: F401
    EfficiencyCurve,
    ExtremumReport,
    FunctionalHandle,
    find_extremum,
    minimizer_drift,
    scaled_efficiency_handle,
    scan,
)
from .quadrature import (  # noqa: F401
    IntegralResult,
    QuadratureConfig,
    QuadratureError,
    integrate_halfline,
    integrate_interval,
    integrate_radial,
)
