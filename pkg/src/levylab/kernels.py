"""Kernel backend selection.

The hot scalar kernels exist twice: a compiled Cython extension
(``levylab._fastkern``) and a pure-numpy fallback (``levylab._kernels_py``).
The compiled core is preferred when importable; set ``LEVYLAB_PURE_PYTHON=1``
to force the fallback (used by the benchmark and the parity tests).
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("LEVYLAB_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _fastkern as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
SIGMA_SWITCH: float = _kernels_py.SIGMA_SWITCH
THETA_SWITCH: float = _kernels_py.THETA_SWITCH

sigma = _impl.sigma
sigma_series = _impl.sigma_series
sigma_direct = _impl.sigma_direct
theta = _impl.theta
theta_series = _impl.theta_series
theta_direct = _impl.theta_direct
sigma_prime = _impl.sigma_prime
u_pow = _impl.u_pow
interval_weight = _impl.interval_weight
eff_integrand_interval = _impl.eff_integrand_interval
dgs_integrand_interval = _impl.dgs_integrand_interval
