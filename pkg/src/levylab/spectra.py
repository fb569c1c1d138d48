"""Prey domains and squared Fourier moduli |p-hat|^2.

Transform convention: p-hat(xi) = int p(x) e^{-2 pi i x xi} dx, so the
indicator of (-R, R) transforms to sin(2 pi R xi)/(pi xi).  Only squared
moduli enter the efficiency functionals, so the sign of the exponent is
immaterial.

A SpectralDensity carries a vectorized evaluator plus support/mass/decay
metadata and a ``structure`` tag that lets the functional layer pick exact
oscillatory tail treatments for the known families (interval, ball, band).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .kernels import interval_weight

__all__ = [
    "CRITICAL_RADIUS",
    "DomainShape",
    "interval",
    "ball",
    "Support",
    "SpectralDensity",
    "IntervalSpectrum",
    "BallSpectrum",
    "BandSpectrum",
    "chi_hat_interval",
    "chi_hat_ball",
    "bessel_j1",
    "band_density",
    "uniform_prey",
]

CRITICAL_RADIUS = 1.0 / (2.0 * math.pi)


# ---------------------------------------------------------------------------
# domains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DomainShape:
    """Bounded convex prey region: an interval (a, b) or an n-ball, with a
    dilation factor r about the origin (Omega_r = r * Omega)."""

    kind: str                   # "interval" | "ball"
    a: float = 0.0              # interval endpoints (kind == "interval")
    b: float = 0.0
    n: int = 1                  # ball dimension (kind == "ball")
    radius: float = 0.0         # ball radius
    center: float = 0.0         # interval/ball center offset (balls: 1D offset norm)
    r: float = 1.0              # dilation factor

    def __post_init__(self) -> None:
        if self.kind not in ("interval", "ball"):
            raise ValueError(f"unsupported shape kind {self.kind!r}")
        if self.r <= 0:
            raise ValueError("dilation factor must be positive")
        if self.kind == "interval":
            if not self.a < self.b:
                raise ValueError("interval requires a < b")
        else:
            if self.n not in (1, 2, 3):
                raise ValueError(f"ball dimension must be in {{1,2,3}}, got {self.n}")
            if self.radius <= 0:
                raise ValueError("ball radius must be positive")

    @property
    def dim(self) -> int:
        return 1 if self.kind == "interval" else self.n

    @property
    def measure(self) -> float:
        """|Omega_r| = r^n |Omega| exactly."""
        if self.kind == "interval":
            return self.r * (self.b - self.a)
        R = self.r * self.radius
        return {1: 2.0 * R, 2: math.pi * R * R, 3: 4.0 * math.pi * R**3 / 3.0}[self.n]

    @property
    def half_width(self) -> float:
        """Half-length of the dilated interval, or dilated ball radius."""
        if self.kind == "interval":
            return 0.5 * self.r * (self.b - self.a)
        return self.r * self.radius

    def dilated(self, factor: float) -> "DomainShape":
        from dataclasses import replace

        return replace(self, r=self.r * factor)


def interval(a: float, b: float, r: float = 1.0) -> DomainShape:
    return DomainShape(kind="interval", a=float(a), b=float(b), r=float(r),
                       center=0.5 * (a + b))


def ball(n: int, radius: float, r: float = 1.0, center: float = 0.0) -> DomainShape:
    return DomainShape(kind="ball", n=int(n), radius=float(radius), r=float(r),
                       center=float(center))


# ---------------------------------------------------------------------------
# Fourier transforms of indicators
# ---------------------------------------------------------------------------

def chi_hat_interval(R: float, xi):
    """Fourier transform of chi_(-R,R): sin(2 pi R xi)/(pi xi), = 2R at xi = 0."""
    if R <= 0:
        raise ValueError("interval half-length R must be positive")
    xi = np.asarray(xi, dtype=float)
    out = 2.0 * R * np.sinc(2.0 * R * xi)
    return float(out) if out.ndim == 0 else out


# Cephes-style rational approximation of J1 on [0,5] and (5,inf); the
# asymptotic branch uses two degree-7/8 rationals in (5/x)^2.  Peak absolute
# error ~2.6e-16 (verified against scipy.special.j1 in the test suite).
_RP1 = [-8.99971225705559398224e8, 4.52228297998194034323e11,
        -7.27494245221818276015e13, 3.68295732863852883286e15]
_RQ1 = [6.20836478118054335476e2, 2.56987256757748830383e5,
        8.35146791431949253037e7, 2.21511595479792499675e10,
        4.74914122079991414898e12, 7.84369607876235854894e14,
        8.95222336184627338078e16, 5.32278620332680085395e18]
_PP1 = [7.62125616208173112003e-4, 7.31397056940917570436e-2,
        1.12719608129684925192e0, 5.11207951146807644818e0,
        8.42404590141772420927e0, 5.21451598682361504063e0,
        1.00000000000000000254e0]
_PQ1 = [5.71323128072548699714e-4, 6.88455908754495404082e-2,
        1.10514232634061696926e0, 5.07386386128601488557e0,
        8.39985554327604159757e0, 5.20982848682361821619e0,
        9.99999999999999997461e-1]
_QP1 = [5.10862594750176621635e-2, 4.98213872951233449420e0,
        7.58238284132545283818e1, 3.66779609360150777800e2,
        7.10856304998926107277e2, 5.97489612400613639965e2,
        2.11688757100572135698e2, 2.52070205858023719784e1]
_QQ1 = [7.42373277035675149943e1, 1.05644886038262816351e3,
        4.98641058337653607651e3, 9.56231892404756170795e3,
        7.99704160447350683650e3, 2.82619278517639096600e3,
        3.36093607810698293419e2]
_Z1 = 1.46819706421238932572e1
_Z2 = 4.92184563216946036703e1
_THPIO4 = 2.35619449019234492885
_SQ2OPI = 7.9788456080286535587989e-1


def _polevl(x, coef):
    ans = np.full_like(x, coef[0])
    for c in coef[1:]:
        ans = ans * x + c
    return ans


def _p1evl(x, coef):
    ans = x + coef[0]
    for c in coef[1:]:
        ans = ans * x + c
    return ans


def bessel_j1(x):
    """Bessel function J1 via a two-interval rational approximation."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x).copy()
    sign = np.where(x < 0, -1.0, 1.0)
    x = np.abs(x)
    out = np.empty_like(x)
    lo = x <= 5.0
    if np.any(lo):
        z = x[lo] * x[lo]
        w = _polevl(z, _RP1) / _p1evl(z, _RQ1)
        out[lo] = w * x[lo] * (z - _Z1) * (z - _Z2)
    if np.any(~lo):
        xx = x[~lo]
        w = 5.0 / xx
        z = w * w
        p = _polevl(z, _PP1) / _polevl(z, _PQ1)
        q = _polevl(z, _QP1) / _p1evl(z, _QQ1)
        xn = xx - _THPIO4
        out[~lo] = _SQ2OPI * (p * np.cos(xn) - w * q * np.sin(xn)) / np.sqrt(xx)
    out *= sign
    return float(out[0]) if scalar else out.reshape(np.shape(sign))


def chi_hat_ball(n: int, R: float, ximag):
    """Radial Fourier transform of chi_{B_R} in dimension n in {1, 2, 3}.

    n=1 delegates to the interval transform; n=2 is R J1(2 pi R xi)/xi;
    n=3 is (sin u - u cos u)/(2 pi^2 xi^3) with u = 2 pi R xi.  At xi = 0
    the value is the ball volume.
    """
    if n not in (1, 2, 3):
        raise ValueError(f"ball dimension must be in {{1,2,3}}, got {n}")
    if R <= 0:
        raise ValueError("ball radius must be positive")
    if n == 1:
        return chi_hat_interval(R, ximag)
    xi = np.asarray(ximag, dtype=float)
    scalar = xi.ndim == 0
    xi = np.atleast_1d(xi).astype(float)
    if np.any(xi < 0):
        raise ValueError("radial frequency must be nonnegative")
    out = np.empty_like(xi)
    u = 2.0 * math.pi * R * xi
    if n == 2:
        small = u < 1e-6
        out[small] = math.pi * R * R * (1.0 - u[small] ** 2 / 8.0)
        xs = xi[~small]
        out[~small] = R * bessel_j1(u[~small]) / xs
    else:
        small = u < 1e-3
        us = u[small]
        # (sin u - u cos u) = u^3/3 - u^5/30 + u^7/840 - ...
        series = (1.0 / 3.0) - us * us / 30.0 + us**4 / 840.0
        out[small] = (2.0 * math.pi * R) ** 3 * series / (2.0 * math.pi**2)
        ub = u[~small]
        xs = xi[~small]
        out[~small] = (np.sin(ub) - ub * np.cos(ub)) / (2.0 * math.pi**2 * xs**3)
    return float(out[0]) if scalar else out.reshape(np.shape(ximag))


# ---------------------------------------------------------------------------
# spectral densities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Support:
    """Radial support annulus [inner, outer] of |p-hat|^2 in frequency space."""

    kind: str       # "all" | "inside-ball" | "outside-ball" | "band"
    inner: float = 0.0
    outer: float = math.inf

    @classmethod
    def all(cls) -> "Support":
        return cls("all", 0.0, math.inf)

    @classmethod
    def inside_ball(cls, rho: float) -> "Support":
        return cls("inside-ball", 0.0, rho)

    @classmethod
    def outside_ball(cls, rho: float) -> "Support":
        return cls("outside-ball", rho, math.inf)

    @classmethod
    def band(cls, inner: float, outer: float) -> "Support":
        return cls("band", max(inner, 0.0), outer)


@dataclass(frozen=True)
class IntervalSpectrum:
    """|chi_hat|^2 structure tag for an interval of half-length R, divided by norm."""
    R: float
    norm: float = 1.0


@dataclass(frozen=True)
class BallSpectrum:
    n: int
    R: float
    norm: float = 1.0


@dataclass(frozen=True)
class BandSpectrum:
    """Symmetrized frequency band: indicator of +/-(c-b, c+b)."""
    c: float
    b: float


Structure = Union[IntervalSpectrum, BallSpectrum, BandSpectrum, None]


@dataclass(frozen=True)
class SpectralDensity:
    """Squared Fourier modulus |p-hat(xi)|^2 with radiality/support metadata.

    ``evaluator`` is vectorized; for n = 1 it takes signed frequencies, for
    n >= 2 the radial profile (|p-hat|^2 is radial for every built-in prey).
    ``mass`` is the full integral of |p-hat|^2 over R^n and
    ``decay_exponent`` q means |p-hat(xi)|^2 = O(|xi|^{-q}).
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    radial: bool
    support: Support
    mass: float
    decay_exponent: float
    dim: int = 1
    structure: Structure = None

    def __call__(self, xi):
        return self.evaluator(np.asarray(xi, dtype=float))


def band_density(c: float, b: float) -> SpectralDensity:
    """Indicator band |p-hat|^2 = chi on +/-(c-b, c+b), symmetrized so the
    underlying prey is real-valued.

    Mass is the exact measure of the union: 2*(2b) for disjoint bands
    (c >= b) and 2(c+b) when they overlap (2b at c = 0, where the union is
    the single band (-b, b)).
    """
    if b <= 0:
        raise ValueError("band half-width must be positive")
    if c < 0:
        raise ValueError("band center must be nonnegative (bands are symmetrized)")
    lo, hi = c - b, c + b

    def evaluator(xi):
        xi = np.asarray(xi, dtype=float)
        inside = (np.abs(xi - c) < b) | (np.abs(xi + c) < b)
        return inside.astype(float)

    mass = 4.0 * b if c >= b else 2.0 * (c + b)
    if hi <= CRITICAL_RADIUS:
        support = Support.inside_ball(hi)
    elif lo >= CRITICAL_RADIUS:
        support = Support.outside_ball(lo)
    else:
        support = Support.band(lo, hi)
    return SpectralDensity(
        evaluator=evaluator,
        radial=(c == 0.0),
        support=support,
        mass=mass,
        decay_exponent=math.inf,
        dim=1,
        structure=BandSpectrum(c=float(c), b=float(b)),
    )


def uniform_prey(shape: DomainShape) -> SpectralDensity:
    """|p-hat|^2 for prey uniformly distributed on the (dilated) shape.

    evaluator(0) = 1 (unit total prey mass) and mass = 1/|Omega_r| by
    Plancherel, since p = chi/|Omega_r|.
    """
    meas = shape.measure
    norm = meas * meas
    if shape.kind == "interval":
        R = shape.half_width

        def evaluator(xi):
            return interval_weight(xi, R, norm)

        return SpectralDensity(
            evaluator=evaluator,
            radial=True,
            support=Support.all(),
            mass=1.0 / meas,
            decay_exponent=2.0,
            dim=1,
            structure=IntervalSpectrum(R=R, norm=norm),
        )
    n, R = shape.n, shape.half_width
    if n == 1:
        return uniform_prey(interval(-R, R))

    def evaluator(rho):
        v = chi_hat_ball(n, R, np.abs(rho))
        return v * v / norm

    decay = {2: 3.0, 3: 4.0}[n]
    return SpectralDensity(
        evaluator=evaluator,
        radial=True,
        support=Support.all(),
        mass=1.0 / meas,
        decay_exponent=decay,
        dim=n,
        structure=BallSpectrum(n=n, R=R, norm=norm),
    )
