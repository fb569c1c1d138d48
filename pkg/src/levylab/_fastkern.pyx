# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled backend for the hot scalar kernels (sigma/theta/spectral weights
and the fused efficiency integrands).  Signatures mirror _kernels_py; the
dispatch in levylab.kernels prefers this module when it importable."""

from libc.math cimport exp, expm1, log, pow, sin, isinf

import math

import numpy as np

BACKEND = "compiled"
SIGMA_SWITCH = 1e-4
THETA_SWITCH = 0.5

cdef double PI = 3.14159265358979323846264338327950288

cdef double[18] THETA_COEF
for _k in range(1, 19):
    THETA_COEF[_k - 1] = ((-1.0) ** (_k + 1)) * _k / math.factorial(_k + 1)


cdef inline double c_sigma(double u) noexcept nogil:
    if u < 1e-4:
        return 1.0 - u / 2.0 + u * u / 6.0 - u * u * u / 24.0
    if isinf(u):
        return 0.0
    return -expm1(-u) / u


cdef inline double c_theta(double u) noexcept nogil:
    cdef double acc = 0.0
    cdef int k
    if u < 0.5:
        for k in range(17, -1, -1):
            acc = acc * u + THETA_COEF[k]
        return acc * u
    if isinf(u):
        return 0.0
    return (-expm1(-u) - u * exp(-u)) / u


cdef inline double c_interval_weight(double xi, double R, double norm) noexcept nogil:
    # series below z = 1e-4: dividing denormal sin(z) by denormal pi*xi
    # loses mantissa bits and poisons adaptive error estimates
    cdef double z = 2.0 * PI * R * xi
    cdef double t
    if z < 1e-4:
        return 4.0 * R * R * (1.0 - z * z / 3.0) / norm
    t = sin(z) / (PI * xi)
    return t * t / norm


cdef inline double c_upow(double xi, double c, double p) noexcept nogil:
    return c * pow(xi, p)


def _wrap(u, fn):
    """Apply a scalar kernel over an arbitrary array or scalar."""
    arr = np.asarray(u, dtype=float)
    if arr.ndim == 0:
        return fn(float(arr))
    flat = np.ascontiguousarray(arr.ravel())
    out = np.empty_like(flat)
    fn(flat, out)
    return out.reshape(arr.shape)


def sigma(u):
    arr = np.asarray(u, dtype=float)
    if arr.ndim == 0:
        return c_sigma(float(arr))
    cdef double[::1] x = np.ascontiguousarray(arr.ravel())
    out_arr = np.empty(x.shape[0], dtype=float)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    for i in range(x.shape[0]):
        out[i] = c_sigma(x[i])
    return out_arr.reshape(arr.shape)


def theta(u):
    arr = np.asarray(u, dtype=float)
    if arr.ndim == 0:
        return c_theta(float(arr))
    cdef double[::1] x = np.ascontiguousarray(arr.ravel())
    out_arr = np.empty(x.shape[0], dtype=float)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    for i in range(x.shape[0]):
        out[i] = c_theta(x[i])
    return out_arr.reshape(arr.shape)


def sigma_prime(u):
    arr = np.asarray(u, dtype=float)
    if arr.ndim == 0:
        if float(arr) == 0.0:
            return -0.5
        return -c_theta(float(arr)) / float(arr)
    cdef double[::1] x = np.ascontiguousarray(arr.ravel())
    out_arr = np.empty(x.shape[0], dtype=float)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    for i in range(x.shape[0]):
        out[i] = -0.5 if x[i] == 0.0 else -c_theta(x[i]) / x[i]
    return out_arr.reshape(arr.shape)


def sigma_series(u):
    arr = np.asarray(u, dtype=float)
    return 1.0 - arr / 2.0 + arr * arr / 6.0 - arr**3 / 24.0 if arr.ndim else \
        float(1.0 - arr / 2.0 + arr * arr / 6.0 - arr**3 / 24.0)


def sigma_direct(u):
    arr = np.asarray(u, dtype=float)
    if arr.ndim == 0:
        v = float(arr)
        return 0.0 if math.isinf(v) else -math.expm1(-v) / v
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        return np.where(np.isinf(arr), 0.0, -np.expm1(-arr) / arr)


def theta_series(u):
    arr = np.asarray(u, dtype=float)
    coef = np.asarray(THETA_COEF)
    acc = np.zeros_like(arr)
    for c in coef[::-1]:
        acc = acc * arr + c
    out = acc * arr
    return float(out) if arr.ndim == 0 else out


def theta_direct(u):
    arr = np.asarray(u, dtype=float)
    if arr.ndim == 0:
        v = float(arr)
        return 0.0 if math.isinf(v) else (-math.expm1(-v) - v * math.exp(-v)) / v
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        return np.where(np.isinf(arr), 0.0, (-np.expm1(-arr) - arr * np.exp(-arr)) / arr)


def u_pow(xi, double c, double p):
    arr = np.asarray(xi, dtype=float)
    if arr.ndim == 0:
        return c_upow(float(arr), c, p)
    cdef double[::1] x = np.ascontiguousarray(arr.ravel())
    out_arr = np.empty(x.shape[0], dtype=float)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    for i in range(x.shape[0]):
        out[i] = c_upow(x[i], c, p)
    return out_arr.reshape(arr.shape)


def interval_weight(xi, double R, double norm=1.0):
    arr = np.asarray(xi, dtype=float)
    if arr.ndim == 0:
        return c_interval_weight(float(arr), R, norm)
    cdef double[::1] x = np.ascontiguousarray(arr.ravel())
    out_arr = np.empty(x.shape[0], dtype=float)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    for i in range(x.shape[0]):
        out[i] = c_interval_weight(x[i], R, norm)
    return out_arr.reshape(arr.shape)


def eff_integrand_interval(xi, double c, double p, double R, double norm):
    """Fused sigma(c xi^p) * |chi-hat_R(xi)|^2/norm over a node array."""
    arr = np.asarray(xi, dtype=float)
    if arr.ndim == 0:
        return c_sigma(c_upow(float(arr), c, p)) * c_interval_weight(float(arr), R, norm)
    cdef double[::1] x = np.ascontiguousarray(arr.ravel())
    out_arr = np.empty(x.shape[0], dtype=float)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    with nogil:
        for i in range(x.shape[0]):
            out[i] = c_sigma(c_upow(x[i], c, p)) * c_interval_weight(x[i], R, norm)
    return out_arr.reshape(arr.shape)


def dgs_integrand_interval(xi, double c, double p, double R, double norm,
                           double log_r):
    """Fused theta(c xi^p) (log_r - ln(2 pi xi)) |chi-hat_R|^2/norm."""
    arr = np.asarray(xi, dtype=float)
    cdef double v
    if arr.ndim == 0:
        v = float(arr)
        if v == 0.0:
            return 0.0
        return c_theta(c_upow(v, c, p)) * (log_r - log(2.0 * PI * v)) \
            * c_interval_weight(v, R, norm)
    cdef double[::1] x = np.ascontiguousarray(arr.ravel())
    out_arr = np.empty(x.shape[0], dtype=float)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    with nogil:
        for i in range(x.shape[0]):
            if x[i] == 0.0:
                out[i] = 0.0
            else:
                out[i] = c_theta(c_upow(x[i], c, p)) \
                    * (log_r - log(2.0 * PI * x[i])) \
                    * c_interval_weight(x[i], R, norm)
    return out_arr.reshape(arr.shape)
