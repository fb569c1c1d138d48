"""Analytic s-derivatives of the efficiency functionals, the frequency-support
monotonicity classifier, and the long-search threshold quantities.

Derivative routes (all closed-form integrands, no numerical differentiation):

* unnormalized functional: d/ds = int T^2 k(xi, s) sigma'(T (2 pi|xi|)^{2s})
  |p-hat|^2 dxi, which simplifies to -2T int ln(2 pi |xi|) theta(u) |p-hat|^2.
* dilated-domain g: d/ds g = 2 int theta(T r^{-2s}(2 pi|xi|)^{2s})
  ln(r/(2 pi |xi|)) |chi-hat|^2, split into the head integral over
  |xi| < r/(2 pi) (nonnegative integrand) and the tail over the complement.
* long-search functional: d/ds J_inf = 2 R^{1+2s} r^{2s-1} g(s)
  (ln(R r) - f(s)) with f = -g'/(2g).

Thresholds: M = sup f on (0, 1/2) and m_sigma = inf f on (0, sigma], located
by an adaptive grid with edge refinement (f is continuous at 0+ and plunges
to -inf at 1/2-); r_Omega = e^M / R and r_{sigma,Omega} = e^{m_sigma} / R.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .functionals import (
    _CFG,
    f_ratio,
    g_of_s,
    g_prime,
    spectral_integral,
)
from .quadrature import IntegralResult, QuadratureConfig, QuadratureError, integrate_interval
from .spectra import (
    CRITICAL_RADIUS,
    DomainShape,
    SpectralDensity,
    uniform_prey,
)

__all__ = [
    "DerivativeBreakdown",
    "ThresholdReport",
    "deriv_s_unnormalized",
    "deriv_s_g",
    "deriv_s_scaled",
    "classify_support",
    "thresholds",
    "deriv_s_J_infty",
]


@dataclass(frozen=True)
class DerivativeBreakdown:
    """d/ds g split into the critical-ball head (nonnegative) and the tail."""

    total: float
    head: float
    tail: float


@dataclass(frozen=True)
class ThresholdReport:
    M: float
    m_sigma: float
    r_Omega: float
    r_sigma_Omega: float
    sigma: float
    R: float
    grid_truncated: bool = False


def _check_open_unit(s: float) -> float:
    s = float(s)
    if not 0.0 < s < 1.0:
        raise ValueError(f"derivative formulas need s strictly in (0, 1), got {s}")
    return s


def deriv_s_unnormalized(spectral: SpectralDensity, s: float, T: float,
                         config: Optional[QuadratureConfig] = None) -> float:
    """d/ds of the unnormalized efficiency for a fixed prey spectral density.

    Integrand T^2 k(xi,s) sigma'(T(2 pi|xi|)^{2s}) |p-hat|^2
    = -2T ln(2 pi|xi|) theta(T(2 pi|xi|)^{2s}) |p-hat|^2: positive when the
    support sits inside the ball of radius 1/(2 pi), negative outside it.
    """
    s = _check_open_unit(s)
    if T <= 0:
        raise ValueError("T must be positive")
    c = T * (2.0 * math.pi) ** (2.0 * s)
    ln2pi = math.log(2.0 * math.pi)
    res = spectral_integral(spectral, "theta", c, 2.0 * s,
                            log_a=ln2pi, log_b=1.0, config=config or _CFG)
    return -2.0 * T * res.value


def deriv_s_g(base: DomainShape, r: float, s: float, T: float,
              config: Optional[QuadratureConfig] = None) -> DerivativeBreakdown:
    """d/ds g(s, r, T) for an interval base, split at the critical radius.

    head = integral over |xi| < r/(2 pi) (its integrand is nonnegative:
    both theta and ln(r/(2 pi |xi|)) are), tail = the complement;
    total = 2 (head + tail).
    """
    s = _check_open_unit(s)
    if base.kind != "interval":
        raise ValueError("the g-derivative split is defined for interval bases")
    if r <= 0 or T <= 0:
        raise ValueError("r and T must be positive")
    cfg = config or _CFG
    spec = uniform_prey(base)
    meas = base.measure
    norm = meas * meas  # undo the prey normalization: integrand uses |chi-hat|^2
    c = T * r ** (-2.0 * s) * (2.0 * math.pi) ** (2.0 * s)
    p = 2.0 * s
    log_r = math.log(r)
    split = r / (2.0 * math.pi)

    R = base.half_width

    def head_integrand(xi):
        return kernels.dgs_integrand_interval(xi, c, p, R, 1.0, log_r)

    bps = []
    if c > 1.0:
        xc = (1.0 / c) ** (1.0 / p)
        bps = [xc * 10.0**k for k in range(-2, 4) if 0 < xc * 10.0**k < split]
    head_half = integrate_interval(head_integrand, 0.0, split, cfg, breakpoints=bps)
    head = 2.0 * head_half.value  # both half-lines

    # tail: ln(r/(2 pi xi)) = (ln r - ln 2pi) - ln xi; integrate over the whole
    # half-line family and subtract the head part for the complement
    ln2pi = math.log(2.0 * math.pi)
    full = spectral_integral(spec, "theta", c, p,
                             log_a=log_r - ln2pi, log_b=-1.0, config=cfg)
    tail = full.value * norm - head
    total = 2.0 * (head + tail)
    return DerivativeBreakdown(total=total, head=head, tail=tail)


def deriv_s_scaled(base: DomainShape, r: float, s: float, T: float,
                   prey_normalized: bool = True,
                   config: Optional[QuadratureConfig] = None) -> float:
    """d/ds of eval_scaled: the g-derivative divided by r^n (and |Omega|^2)."""
    bd = deriv_s_g(base, r, s, T, config=config)
    n = base.dim
    scale = r**n
    if prey_normalized:
        scale *= base.measure ** 2
    return bd.total / scale


def classify_support(spectral: SpectralDensity) -> str:
    """'increasing' if |p-hat|^2 lives inside the critical ball of radius
    1/(2 pi), 'decreasing' if outside, else 'indeterminate'."""
    sup = spectral.support
    if sup.outer <= CRITICAL_RADIUS + 1e-15:
        return "increasing"
    if sup.inner >= CRITICAL_RADIUS - 1e-15:
        return "decreasing"
    return "indeterminate"


def deriv_s_J_infty(R: float, r: float, s: float,
                    config: Optional[QuadratureConfig] = None) -> float:
    """d/ds J_inf = 2 R^{1+2s} r^{2s-1} g(s) (ln(R r) - f(s)); its sign is the
    sign of ln(R r) - f(s) since the prefactor is positive."""
    if not 0.0 < s < 0.5:
        raise ValueError(
            f"long-search derivative needs s in (0, 1/2), got {s} "
            "(the functional diverges for s >= 1/2)"
        )
    if R <= 0 or r <= 0:
        raise ValueError("R and r must be positive")
    g = g_of_s(s, config)
    f = f_ratio(s, config)
    return 2.0 * R ** (1.0 + 2.0 * s) * r ** (2.0 * s - 1.0) * g * (math.log(R * r) - f)


def thresholds(R: float, sigma: float, s_min: float = 1e-6, s_max: float = 0.499,
               coarse: int = 40, refine_rounds: int = 25,
               config: Optional[QuadratureConfig] = None) -> ThresholdReport:
    """Extrema of f on (0, 1/2) and the exponentiated dilation thresholds.

    f is scanned on a grid that accumulates points toward s = 1/2 (where f
    plunges to -inf) and refined locally around the located extrema; no edge
    attainment is assumed.  Guarantees verified downstream: J_inf(r, .) is
    strictly increasing on (0, 1/2) for r > r_Omega and strictly decreasing
    on (0, sigma) for r < r_{sigma,Omega}.
    """
    if R <= 0:
        raise ValueError("R must be positive")
    if not 0.0 < sigma < 0.5:
        raise ValueError(f"sigma must lie in (0, 1/2), got {sigma}")
    cfg = config or _CFG
    truncated = False

    def f(s: float) -> float:
        return f_ratio(s, cfg)

    lin = np.linspace(s_min, 0.45, coarse)
    near_half = 0.5 - np.geomspace(0.05, 0.5 - s_max, 12)
    grid = np.unique(np.concatenate([lin, near_half, [sigma]]))
    grid = grid[(grid >= s_min) & (grid <= s_max)]
    vals = []
    kept = []
    for s in grid:
        try:
            vals.append(f(float(s)))
            kept.append(float(s))
        except QuadratureError:
            truncated = True
    if not kept:
        raise QuadratureError(
            "threshold scan failed at every grid point; loosen the quadrature "
            "configuration or shrink s_max")
    grid = np.asarray(kept)
    vals = np.asarray(vals)

    def local_refine(idx: int, mode: str, hi_cap: float = s_max) -> tuple[float, float]:
        lo = grid[max(idx - 1, 0)]
        hi = min(grid[min(idx + 1, len(grid) - 1)], hi_cap)
        s_best, v_best = min(grid[idx], hi_cap), vals[idx]
        for _ in range(refine_rounds):
            s1 = 0.5 * (lo + s_best)
            s2 = 0.5 * (s_best + hi)
            candidates = [(s_best, v_best), (s1, f(s1)), (s2, f(s2))]
            s_new, v_new = (max if mode == "max" else min)(candidates, key=lambda t: t[1])
            lo, hi = max(lo, s_new - 0.5 * (hi - lo)), min(hi, s_new + 0.5 * (hi - lo))
            if abs(v_new - v_best) < 1e-12 * max(1.0, abs(v_best)) and s_new == s_best:
                s_best, v_best = s_new, v_new
                break
            s_best, v_best = s_new, v_new
        return s_best, v_best

    i_max = int(np.argmax(vals))
    _, M = local_refine(i_max, "max")
    # sup over (0, 1/2): if attained at the left grid edge, push toward 0
    if i_max == 0:
        s_edge = grid[0]
        while s_edge > 1e-12:
            s_edge *= 1e-2
            v_edge = f(max(s_edge, 1e-12))
            if v_edge <= M:
                break
            M = v_edge

    mask = grid <= sigma + 1e-15
    sub_vals = vals[mask]
    i_min = int(np.argmin(sub_vals))
    _, m_sigma = local_refine(int(np.flatnonzero(mask)[i_min]), "min", hi_cap=sigma)
    f_sigma = f(sigma)
    if f_sigma < m_sigma:
        m_sigma = f_sigma

    return ThresholdReport(
        M=M,
        m_sigma=m_sigma,
        r_Omega=math.exp(M) / R,
        r_sigma_Omega=math.exp(m_sigma) / R,
        sigma=sigma,
        R=R,
        grid_truncated=truncated,
    )
