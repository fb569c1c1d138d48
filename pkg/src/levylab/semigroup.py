"""Fractional-heat Fourier multiplier and the auxiliary scalars sigma, theta, k.

The evolution multiplier is e^{-t (2 pi |xi|)^{2s}}.  Its time integral over
[0, T] produces T * sigma(T (2 pi |xi|)^{2s}) with sigma(x) = (1 - e^{-x})/x,
and the s-derivative machinery runs on theta(x) = -x sigma'(x) and
k(xi, s) = 2 ln(2 pi |xi|) (2 pi |xi|)^{2s}.

Endpoint conventions: s = 1 is the classical heat multiplier; s = 0 uses
(2 pi * 0)^0 := 1 so the multiplier is e^{-t} uniformly (pure mass decay).
All functions accept scalars or numpy arrays.

The real-space operator normalization 2^{2s-1} Gamma(n/2 + s) /
(pi^{n/2} |Gamma(-s)|) is exactly the constant that makes the Fourier symbol
(2 pi |xi|)^{2s}; it never enters numerically because everything here is
evaluated on the Fourier side (formula-only constant).
"""
from __future__ import annotations

import math

import numpy as np

from . import kernels

__all__ = [
    "sigma",
    "sigma_prime",
    "theta",
    "multiplier",
    "multiplier_arg",
    "k_factor",
]

_LOG_MAX = 709.0  # exp overflows past this

sigma = kernels.sigma
sigma_prime = kernels.sigma_prime
theta = kernels.theta


def _check_s(s: float) -> float:
    s = float(s)
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"Levy exponent s must lie in [0, 1], got {s}")
    return s


def multiplier_arg(s: float, t: float, ximag, r: float = 1.0):
    """Dimensionless argument u = t * r^{-2s} * (2 pi |xi|)^{2s}.

    Computed as exp(ln t + 2s ln(2 pi |xi|) - 2s ln r) to avoid premature
    overflow/underflow; saturates to 0 / +inf outside the exponent range.
    At xi = 0: u = 0 for s > 0, and u = t * r^{-0} * 1 = t for s = 0.
    """
    s = _check_s(s)
    if t <= 0:
        raise ValueError(f"time t must be positive, got {t}")
    if r <= 0:
        raise ValueError(f"dilation r must be positive, got {r}")
    xi = np.asarray(ximag, dtype=float)
    scalar = xi.ndim == 0
    xi = np.atleast_1d(xi)
    if np.any(xi < 0):
        raise ValueError("frequency magnitude must be nonnegative")
    out = np.empty_like(xi)
    zero = xi == 0.0
    out[zero] = float(t) if s == 0.0 else 0.0
    xs = xi[~zero]
    ln_u = math.log(t) - 2.0 * s * math.log(r) + 2.0 * s * (np.log(xs) + math.log(2.0 * math.pi))
    with np.errstate(over="ignore"):
        out[~zero] = np.where(ln_u > _LOG_MAX, np.inf, np.exp(np.minimum(ln_u, _LOG_MAX)))
    return float(out[0]) if scalar else out.reshape(np.shape(ximag))


def multiplier(s: float, t: float, ximag):
    """e^{-t (2 pi |xi|)^{2s}}, the Fourier symbol of the time-t evolution.

    Range (0, 1]; equals e^{-t} for every xi when s = 0 and the Gaussian
    multiplier when s = 1.
    """
    u = multiplier_arg(s, t, ximag)
    with np.errstate(over="ignore"):
        return np.exp(-u) if not np.isscalar(u) else math.exp(-u) if u < _LOG_MAX else 0.0


def k_factor(s: float, ximag):
    """k(xi, s) = 2 ln(2 pi |xi|) (2 pi |xi|)^{2s}; negative iff |xi| < 1/(2 pi)."""
    s = _check_s(s)
    xi = np.asarray(ximag, dtype=float)
    scalar = xi.ndim == 0
    if np.any(np.atleast_1d(xi) <= 0):
        raise ValueError("k_factor requires ximag > 0")
    z = 2.0 * math.pi * xi
    out = 2.0 * np.log(z) * np.power(z, 2.0 * s)
    return float(out) if scalar else out
