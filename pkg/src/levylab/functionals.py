"""Efficiency functionals of a fractional-diffusive forager with stationary prey.

The time-integrated closed form is used everywhere: for a prey spectral
density |p-hat|^2,

    J_unnorm(s, T) = int_{R^n} T sigma(T (2 pi |xi|)^{2s}) |p-hat(xi)|^2 dxi,

with sigma(x) = (1 - e^{-x})/x; the normalized variant divides by T.  The
dilated-domain functional runs through g(s, r, T) =
int sigma(T r^{-2s} (2 pi |xi|)^{2s}) |chi-hat(xi)|^2 dxi, the long-search
limit through J_inf(R, r, s) = r^{2s-1} int |chi-hat|^2 (2 pi |xi|)^{-2s} dxi
(finite only for s < 1/2 in one dimension).

Prey-mass bookkeeping: uniform prey is a probability density, so
eval_scaled returns g/(r^n |Omega|^2) and agrees with eval_efficiency on
the dilated domain; the raw indicator-prey variant g/r^n (the one whose
T -> inf limit is exactly J_inf) is available via prey_normalized=False.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import kernels
from .quadrature import (
    IntegralResult,
    PowerLogHead,
    QuadratureConfig,
    TailGroup,
    TailModel,
    integrate_halfline,
    integrate_interval,
)
from .spectra import (
    BallSpectrum,
    BandSpectrum,
    DomainShape,
    IntervalSpectrum,
    SpectralDensity,
    interval,
    uniform_prey,
)

__all__ = [
    "EfficiencyQuery",
    "LongTimeQuery",
    "eval_efficiency",
    "eval_efficiency_result",
    "g_scaled",
    "eval_scaled",
    "stationary_overlap",
    "eval_L_surface",
    "eval_J_infty",
    "j_infty",
    "g_of_s",
    "g_prime",
    "f_ratio",
    "spectral_integral",
]

_CFG = QuadratureConfig(rel_tol=1e-11, abs_tol=0.0, max_panels=20000)

# fitted large-z decomposition pi z J1(z)^2 = A - S sin(2z) - C cos(2z),
# A = 1 + 3/(8 z^2), S = 1 + 3/(32 z^2), C = 3/(4z) - 0.1170873/z^3;
# |residual| <= 300/z^4 for z >= 60 (validated against scipy.special.j1).
_J1SQ_C3 = 0.1170873
_J1SQ_RESID = 300.0


@dataclass(frozen=True)
class EfficiencyQuery:
    """Evaluation request for the efficiency functional."""

    spectral: SpectralDensity
    s: float
    T: float
    r: float = 1.0
    n: Optional[int] = None
    normalized: bool = True

    def __post_init__(self) -> None:
        if not 0.0 <= self.s <= 1.0:
            raise ValueError(f"s must lie in [0, 1], got {self.s}")
        if self.T <= 0:
            raise ValueError(f"T must be positive, got {self.T}")
        if self.r <= 0:
            raise ValueError(f"r must be positive, got {self.r}")

    @property
    def dim(self) -> int:
        return self.n if self.n is not None else self.spectral.dim


@dataclass(frozen=True)
class LongTimeQuery:
    """Renormalized very-long-search functional: interval half-length R,
    dilation r, exponent s strictly inside (0, 1/2); one dimension only."""

    R: float
    r: float
    s: float

    def __post_init__(self) -> None:
        if self.R <= 0 or self.r <= 0:
            raise ValueError("R and r must be positive")
        if not 0.0 < self.s < 0.5:
            raise ValueError(
                f"long-search exponent must lie strictly in (0, 1/2); the "
                f"integral diverges for s >= 1/2 (got s={self.s})"
            )


# ---------------------------------------------------------------------------
# tail-model builders per spectral family
# ---------------------------------------------------------------------------

def _loggroups(base: dict, a: float, b: float) -> dict:
    """Multiply a term dict by (a + b ln xi)."""
    out: dict = {}
    for (m, i, fk), coef in base.items():
        if a != 0.0:
            out[(m, i, fk)] = out.get((m, i, fk), 0.0) + a * coef
        if b != 0.0:
            out[(m, i + 1, fk)] = out.get((m, i + 1, fk), 0.0) + b * coef
    return {k: v for k, v in out.items() if v != 0.0}


def _interval_model(fkey: str, c: float, p: float, R: float, norm: float,
                    log_a: float, log_b: float, dm: float) -> TailModel:
    """Tail of the one-sided radial integrand
    F(c xi^p) (log_a + log_b ln xi) xi^{-dm} |chi-hat_R(xi)|^2 / norm."""
    X = max(2.0, 300.0 / (4.0 * math.pi * R))
    A = 1.0 / (math.pi**2 * norm)
    dc = _loggroups({(2.0 + dm, 0, fkey): 0.5 * A}, log_a, log_b)
    osc = _loggroups({(2.0 + dm, 0, fkey): -0.5 * A}, log_a, log_b)
    return TailModel(
        groups=(TailGroup(dc, "dc"), TailGroup(osc, "cos", 4.0 * math.pi * R)),
        c=c, p=p, cut=X,
    )


def _ball3_model(fkey: str, c: float, p: float, R: float, norm: float,
                 scale: float) -> TailModel:
    """Tail of rho^2 |chi-hat_{B_R}|^2/norm * F: exact trig split of
    (sin z - z cos z)^2 with z = 2 pi R rho."""
    a = 2.0 * math.pi * R
    X = max(2.0, 300.0 / (2.0 * a))
    K = scale / (4.0 * math.pi**4 * norm)
    dc = {(4.0, 0, fkey): 0.5 * K, (2.0, 0, fkey): 0.5 * K * a * a}
    cosg = {(2.0, 0, fkey): 0.5 * K * a * a, (4.0, 0, fkey): -0.5 * K}
    sing = {(3.0, 0, fkey): -K * a}
    return TailModel(
        groups=(TailGroup(dc, "dc"), TailGroup(cosg, "cos", 2.0 * a),
                TailGroup(sing, "sin", 2.0 * a)),
        c=c, p=p, cut=X,
    )


def _ball2_model(fkey: str, c: float, p: float, R: float, norm: float,
                 scale: float) -> TailModel:
    """Tail of rho |chi-hat_{B_R}|^2/norm * F via the validated J1^2
    large-argument decomposition (residual <= 300/z^4 for z >= 60)."""
    from .quadrature import _f_sup  # envelope of F on the tail

    a = 2.0 * math.pi * R
    X = max(2.0, 80.0 / a, 300.0 / (2.0 * a))
    K0 = scale * R / (2.0 * math.pi**2 * norm)
    dc = {(2.0, 0, fkey): K0, (4.0, 0, fkey): K0 * 3.0 / (8.0 * a * a)}
    sing = {(2.0, 0, fkey): -K0, (4.0, 0, fkey): -K0 * 3.0 / (32.0 * a * a)}
    cosg = {(3.0, 0, fkey): -K0 * 3.0 / (4.0 * a), (5.0, 0, fkey): K0 * _J1SQ_C3 / a**3}
    resid = K0 * _J1SQ_RESID / a**4 * _f_sup(fkey, c * X**p) / (5.0 * X**5)
    return TailModel(
        groups=(TailGroup(dc, "dc"), TailGroup(sing, "sin", 2.0 * a),
                TailGroup(cosg, "cos", 2.0 * a)),
        c=c, p=p, cut=X, extra_bound=resid,
    )


_SPHERE = {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}


def spectral_integral(
    spectral: SpectralDensity,
    fkey: str,
    c: float,
    p: float,
    log_a: float = 1.0,
    log_b: float = 0.0,
    dm: float = 0.0,
    config: Optional[QuadratureConfig] = None,
) -> IntegralResult:
    """int_{R^n} F(c |xi|^p) (log_a + log_b ln|xi|) |xi|^{-dm} |p-hat(xi)|^2 dxi.

    F is one of the tail-algebra keys ('one', 'sigma', 'theta', 'expj').
    This is the single quadrature engine behind every functional; the
    spectral structure tag selects exact oscillatory tail handling.
    dm > 0 (with log_b as needed) produces the singular-head families and
    requires dm < 1.
    """
    cfg = config or _CFG
    n = spectral.dim
    fold = _SPHERE[n]
    Feval = {
        "one": lambda u: np.ones_like(u),
        "sigma": kernels.sigma,
        "theta": kernels.theta,
    }.get(fkey)
    if Feval is None:
        if not fkey.startswith("exp"):
            raise ValueError(f"unsupported integrand family {fkey!r}")
        j = int(fkey[3:])

        def Feval(u):
            with np.errstate(over="ignore", under="ignore", invalid="ignore"):
                return np.where(np.isinf(u), 0.0, u**j * np.exp(-np.minimum(u, 745.0)))

    def base_integrand(xi):
        xi = np.asarray(xi, dtype=float)
        with np.errstate(over="ignore", under="ignore"):
            u = c * np.power(xi, p)
        w = np.asarray(spectral.evaluator(xi), dtype=float) * xi ** (n - 1)
        val = Feval(u) * w
        if dm != 0.0:
            with np.errstate(divide="ignore", over="ignore"):
                val = val * np.power(xi, -dm)
        if log_b != 0.0:
            with np.errstate(divide="ignore"):
                ln = np.where(xi > 0, np.log(np.maximum(xi, 1e-300)), -np.inf)
            val = val * (log_a + log_b * ln)
            val = np.where(xi == 0.0, 0.0, val)
        elif log_a != 1.0:
            val = val * log_a
        return val

    struct = spectral.structure
    head = None
    breakpoints = []
    if c > 1.0 and p > 0:
        # resolve the sigma/theta transition scale
        xc = (1.0 / c) ** (1.0 / p)
        breakpoints += [xc * 10.0**k for k in range(-2, 4)]

    if isinstance(struct, BandSpectrum):
        lo = max(struct.c - struct.b, 0.0)
        hi = struct.c + struct.b
        if dm != 0.0 and lo == 0.0:
            raise ValueError("singular-head band integrals are not used")
        res = integrate_interval(
            base_integrand, lo, hi, cfg,
            breakpoints=[b for b in breakpoints if lo < b < hi],
        )
        return IntegralResult(fold * res.value, fold * res.error_estimate,
                              res.panels_used, 0.0)

    if isinstance(struct, IntervalSpectrum):
        model = _interval_model(fkey, c, p, struct.R, struct.norm, log_a, log_b,
                                dm)
    elif isinstance(struct, BallSpectrum) and struct.n == 3:
        if dm != 0.0 or log_b != 0.0:
            raise ValueError("singular/log families are one-dimensional")
        model = _ball3_model(fkey, c, p, struct.R, struct.norm, log_a)
    elif isinstance(struct, BallSpectrum) and struct.n == 2:
        if dm != 0.0 or log_b != 0.0:
            raise ValueError("singular/log families are one-dimensional")
        model = _ball2_model(fkey, c, p, struct.R, struct.norm, log_a)
    else:
        # generic evaluator: envelope-bounded tail from the decay metadata
        q = spectral.decay_exponent - (n - 1) + dm
        if not math.isfinite(q) or q <= 1.0:
            raise ValueError("generic spectral density needs decay metadata with q > 1")
        X = cfg.tail_cut or 1e4
        probe = np.geomspace(max(X, 2.0), 100.0 * X, 64)
        Cenv = 4.0 * float(np.max(np.abs(base_integrand(probe)) * probe**q)) + 1e-300
        res = integrate_halfline(
            base_integrand,
            QuadratureConfig(cfg.rel_tol, cfg.abs_tol, cfg.max_panels, tail_cut=X),
            envelope=(Cenv, q), breakpoints=breakpoints,
        )
        return IntegralResult(fold * res.value, fold * res.error_estimate,
                              res.panels_used, fold * res.tail_bound)

    X = model.cut
    osc_half = None
    if isinstance(struct, IntervalSpectrum):
        osc_half = 1.0 / (4.0 * struct.R)
    elif isinstance(struct, BallSpectrum):
        osc_half = 1.0 / (4.0 * struct.R)
    if dm != 0.0:
        R = struct.R
        eps = min(0.05 / R, X / 8.0)

        def G(xi):
            xi = np.asarray(xi, dtype=float)
            return np.asarray(spectral.evaluator(xi), dtype=float) * Feval(
                c * np.power(np.maximum(xi, 0.0), p) if p > 0 else np.full_like(xi, c))

        head = PowerLogHead(alpha=dm, eps=eps, G=G, a=log_a, b=log_b)
    res = integrate_halfline(
        base_integrand,
        QuadratureConfig(cfg.rel_tol, cfg.abs_tol, cfg.max_panels,
                         oscillation_period=osc_half),
        tail_model=model,
        breakpoints=[b for b in breakpoints if b < X],
        head=head,
    )
    return IntegralResult(fold * res.value, fold * res.error_estimate,
                          res.panels_used, fold * res.tail_bound)


# ---------------------------------------------------------------------------
# efficiency functionals
# ---------------------------------------------------------------------------

def eval_efficiency_result(q: EfficiencyQuery,
                           config: Optional[QuadratureConfig] = None) -> IntegralResult:
    """Efficiency functional with quadrature diagnostics attached."""
    cfg = config or _CFG
    if q.s == 0.0:
        # (2 pi |xi|)^0 == 1: the integral collapses to sigma(T) * mass exactly
        val = float(kernels.sigma(q.T)) * q.spectral.mass
        val = val if q.normalized else q.T * val
        return IntegralResult(val, 0.0, 0)
    c = q.T * (2.0 * math.pi) ** (2.0 * q.s)
    res = spectral_integral(q.spectral, "sigma", c, 2.0 * q.s, config=cfg)
    scale = 1.0 if q.normalized else q.T
    return IntegralResult(scale * res.value, scale * res.error_estimate,
                          res.panels_used, scale * res.tail_bound)


def eval_efficiency(q: EfficiencyQuery,
                    config: Optional[QuadratureConfig] = None) -> float:
    """J(s, T) for the given prey spectral density (Fourier closed form).

    Normalized: (1/T) int_0^T int u p = int sigma(T (2 pi |xi|)^{2s}) |p-hat|^2;
    unnormalized multiplies by T.  For uniform self-search prey the value is
    bounded by 1/|Omega_r| (sigma <= 1 pointwise).
    """
    return eval_efficiency_result(q, config).value


def g_scaled(base: DomainShape, r: float, s: float, T: float,
             config: Optional[QuadratureConfig] = None) -> float:
    """g(s, r, T) = int_{R^n} sigma(T r^{-2s} (2 pi |xi|)^{2s}) |chi-hat_Omega|^2 dxi.

    chi-hat is the indicator transform of the *base* domain; the dilation
    enters only through the rescaled time T r^{-2s}.
    """
    if r <= 0 or T <= 0:
        raise ValueError("r and T must be positive")
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"s must lie in [0, 1], got {s}")
    spec = uniform_prey(base)
    # indicator transform: drop the 1/|Omega|^2 prey normalization
    meas = base.measure
    if s == 0.0:
        return float(kernels.sigma(T)) * spec.mass * meas * meas
    c = T * r ** (-2.0 * s) * (2.0 * math.pi) ** (2.0 * s)
    res = spectral_integral(spec, "sigma", c, 2.0 * s, config=config or _CFG)
    return res.value * meas * meas


def eval_scaled(base: DomainShape, r: float, s: float, T: float,
                prey_normalized: bool = True,
                config: Optional[QuadratureConfig] = None) -> float:
    """Efficiency on the dilated domain Omega_r computed through g(s, r, T).

    With prey_normalized=True this equals eval_efficiency for uniform prey
    on Omega_r (probability prey); prey_normalized=False returns g/r^n, the
    indicator-prey variant whose T->inf limit is exactly J_inf.
    """
    n = base.dim
    g = g_scaled(base, r, s, T, config=config)
    if prey_normalized:
        meas = base.measure
        return g / (r**n * meas * meas)
    return g / r**n


def stationary_overlap(omega1: DomainShape, omega2: DomainShape) -> float:
    """|Omega_1 cap Omega_2| / (|Omega_1| |Omega_2|), the stationary-forager
    efficiency; equals 1/|Omega_2| for nested regions."""
    if omega1.dim != omega2.dim:
        raise ValueError("shapes must share a dimension")
    if omega1.kind == "interval" and omega2.kind == "interval":
        a = max(omega1.r * omega1.a, omega2.r * omega2.a)
        b = min(omega1.r * omega1.b, omega2.r * omega2.b)
        inter = max(0.0, b - a)
    elif omega1.kind == "ball" and omega2.kind == "ball":
        inter = _ball_intersection(omega1, omega2)
    else:
        raise ValueError("unsupported shape pair for overlap")
    return inter / (omega1.measure * omega2.measure)


def _ball_intersection(b1: DomainShape, b2: DomainShape) -> float:
    n = b1.n
    R1, R2 = b1.half_width, b2.half_width
    d = abs(b1.center * b1.r - b2.center * b2.r)
    if d >= R1 + R2:
        return 0.0
    if d <= abs(R1 - R2):
        return min(b1.measure, b2.measure)
    if n == 1:
        lo = max(b1.center * b1.r - R1, b2.center * b2.r - R2)
        hi = min(b1.center * b1.r + R1, b2.center * b2.r + R2)
        return max(0.0, hi - lo)
    if n == 2:
        # lens area of two offset disks
        def seg(R, x):
            x = min(max(x / R, -1.0), 1.0)
            return R * R * math.acos(x) - R * R * x * math.sqrt(max(0.0, 1 - x * x))

        x1 = (d * d + R1 * R1 - R2 * R2) / (2.0 * d)
        x2 = d - x1
        return seg(R1, x1) + seg(R2, x2)
    # n == 3: two spherical caps
    h1 = (R2 - R1 + d) * (R2 + R1 - d) / (2.0 * d)
    h2 = (R1 - R2 + d) * (R1 + R2 - d) / (2.0 * d)

    def cap(R, h):
        return math.pi * h * h * (3.0 * R - h) / 3.0

    return cap(R1, h1) + cap(R2, h2)


def eval_L_surface(s: float, r: float, T: float = 1.0,
                   config: Optional[QuadratureConfig] = None) -> float:
    """One-sided shifted-band efficiency L(s, r): p-hat = chi_{B_{1/(3 pi)}}(. - r).

    Kept one-sided (complex-valued prey) to match the surface it reproduces;
    the band edges are r -/+ 1/(3 pi) and the integrand depends on |xi|.
    """
    if not 0.0 < s < 1.0:
        raise ValueError(f"L(s, r) needs s in (0, 1), got {s}")
    if r < 0:
        raise ValueError("shift r must be nonnegative")
    cfg = config or _CFG
    b = 1.0 / (3.0 * math.pi)
    lo, hi = r - b, r + b
    c = T * (2.0 * math.pi) ** (2.0 * s)
    p = 2.0 * s

    def f(xi):
        return T * kernels.sigma(kernels.u_pow(np.abs(xi), c, p))

    segs = []
    if lo < 0:
        segs.append((0.0, -lo))
    segs.append((max(lo, 0.0), hi))
    total = 0.0
    for a_, b_ in segs:
        if b_ > a_:
            total += integrate_interval(f, a_, b_, cfg).value
    return total


def eval_J_infty(q: LongTimeQuery,
                 config: Optional[QuadratureConfig] = None) -> float:
    """J_inf(R, r, s) = r^{2s-1} int_R |chi-hat_(-R,R)|^2 (2 pi |xi|)^{-2s} dxi.

    Scales as R^{1+2s} J_inf^{(-1,1)} and is invariant under translating the
    interval.  The xi^{-2s} head runs through the exact power-substitution
    panel; s >= 1/2 is refused at query construction.
    """
    spec = uniform_prey(interval(-q.R, q.R))
    norm = (2.0 * q.R) ** 2
    D = (2.0 * math.pi) ** (-2.0 * q.s)
    res = spectral_integral(spec, "one", 1.0, 1.0, log_a=D, dm=2.0 * q.s,
                            config=config or _CFG)
    return q.r ** (2.0 * q.s - 1.0) * res.value * norm


def j_infty(R: float, r: float, s: float,
            config: Optional[QuadratureConfig] = None) -> float:
    return eval_J_infty(LongTimeQuery(R=R, r=r, s=s), config=config)


def _unit_interval_power(s: float, log_a: float, log_b: float,
                         config: Optional[QuadratureConfig]) -> float:
    if not 0.0 <= s < 0.5:
        raise ValueError(
            f"g-family integrals require s in [0, 1/2), got {s} "
            "(the integral diverges for s >= 1/2)"
        )
    spec = uniform_prey(interval(-1.0, 1.0))
    D = (2.0 * math.pi) ** (-2.0 * s)
    res = spectral_integral(spec, "one", 1.0, 1.0, log_a=log_a * D,
                            log_b=log_b * D, dm=2.0 * s, config=config or _CFG)
    return res.value * 4.0


def g_of_s(s: float, config: Optional[QuadratureConfig] = None) -> float:
    """g(s) = int |chi-hat_(-1,1)|^2 (2 pi |xi|)^{-2s} dxi; g(0) = 2 (Plancherel)."""
    return _unit_interval_power(s, 1.0, 0.0, config)


def g_prime(s: float, config: Optional[QuadratureConfig] = None) -> float:
    """g'(s) = -2 int |chi-hat|^2 (2 pi |xi|)^{-2s} ln(2 pi |xi|) dxi > 0."""
    ln2pi = math.log(2.0 * math.pi)
    return _unit_interval_power(s, -2.0 * ln2pi, -2.0, config)


def f_ratio(s: float, config: Optional[QuadratureConfig] = None) -> float:
    """f(s) = -g'(s) / (2 g(s)), negative on [0, 1/2), diverging to -inf at 1/2."""
    return -g_prime(s, config) / (2.0 * g_of_s(s, config))
