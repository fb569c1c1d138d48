"""Adaptive half-line quadrature tuned to kinked heads and sin^2-modulated
algebraic tails, plus radial reduction for radial integrands in n <= 3.

Layout of a half-line integral here:

* ``[0, X]`` (X = tail cut): bisection-adaptive embedded Gauss-Legendre
  15/31 panels, with optional panel alignment to half-periods of the
  oscillation and an optional exact power-law head for integrable
  ``xi^{-alpha}`` endpoint singularities (alpha < 1; alpha >= 1 refused).

* ``[X, inf)``: either a caller-declared envelope ``|f| <= C xi^{-q}``
  (q > 1), which only bounds the discarded tail, or a :class:`TailModel`
  that *evaluates* it.  A TailModel splits the integrand into a DC part
  (integrated on a geometric mesh out to an envelope-negligible cutoff)
  and sin/cos parts at fixed frequency, evaluated by repeated analytic
  integration by parts over a closed term algebra
  ``coef * xi^{-m} ln^i(xi) * F(c xi^p)`` with
  ``F in {1, sigma, theta, 1/u, u^j e^{-u}}`` - each IBP step gains a
  factor ~1/(w X) and the dropped remainder is bounded rigorously.

Naive period-summation was rejected: a sin^2 modulation is nonnegative, so
period sums do not alternate and extrapolating them is unreliable (the DC
split restores alternation where it is needed and removes it elsewhere).
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import roots_legendre

from .kernels import sigma, theta

__all__ = [
    "QuadratureConfig",
    "IntegralResult",
    "QuadratureError",
    "integrate_interval",
    "integrate_halfline",
    "integrate_radial",
    "power_log_head",
    "PowerLogHead",
    "TailGroup",
    "TailModel",
]

SPHERE_SURFACE = {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_panels: int = 20000
    tail_cut: Optional[float] = None
    oscillation_period: Optional[float] = None

    def __post_init__(self) -> None:
        if self.rel_tol <= 0 or self.abs_tol < 0:
            raise ValueError("tolerances must be positive (abs_tol may be 0)")
        if self.max_panels < 16:
            raise ValueError("max_panels must be at least 16")


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    panels_used: int
    tail_bound: float = 0.0


class QuadratureError(RuntimeError):
    """Non-convergence or invalid tail declaration; carries the best estimate."""

    def __init__(self, message: str, result: Optional[IntegralResult] = None):
        super().__init__(message)
        self.result = result


_NODES15, _WEIGHTS15 = roots_legendre(15)
_NODES31, _WEIGHTS31 = roots_legendre(31)
_NODES32, _WEIGHTS32 = roots_legendre(32)


def _panel_batch(f, edges_lo: np.ndarray, edges_hi: np.ndarray):
    """Embedded GL15/GL31 on a batch of panels; returns (I31, err) arrays."""
    half = 0.5 * (edges_hi - edges_lo)
    mid = 0.5 * (edges_hi + edges_lo)
    x15 = mid[:, None] + half[:, None] * _NODES15[None, :]
    x31 = mid[:, None] + half[:, None] * _NODES31[None, :]
    f15 = np.asarray(f(x15.ravel()), dtype=float).reshape(x15.shape)
    f31 = np.asarray(f(x31.ravel()), dtype=float).reshape(x31.shape)
    i15 = half * (f15 @ _WEIGHTS15)
    i31 = half * (f31 @ _WEIGHTS31)
    return i31, np.abs(i31 - i15)


def _adaptive(f, edges: Sequence[float], cfg: QuadratureConfig):
    """Adaptive bisection refinement over the initial panel edges.

    Deterministic: the heap is ordered by (error, insertion counter) and the
    final value re-sums panel integrals in left-endpoint order with fsum.
    """
    edges = np.asarray(sorted(set(float(e) for e in edges)))
    if len(edges) < 2:
        raise ValueError("need at least one panel")
    lo, hi = edges[:-1], edges[1:]
    vals, errs = _panel_batch(f, lo, hi)
    counter = 0
    heap = []
    panels = {}
    for a, b, v, e in zip(lo, hi, vals, errs):
        panels[counter] = (a, b, v, e)
        heapq.heappush(heap, (-e, counter))
        counter += 1
    n_used = len(panels)

    def totals():
        items = sorted(panels.values(), key=lambda t: t[0])
        return math.fsum(t[2] for t in items), math.fsum(t[3] for t in items)

    tot_v, tot_e = totals()
    while tot_e > max(cfg.abs_tol, cfg.rel_tol * abs(tot_v)):
        if n_used >= cfg.max_panels:
            value, err = totals()
            raise QuadratureError(
                f"no convergence within {cfg.max_panels} panels "
                f"(error estimate {err:.3e} on value {value:.6e})",
                IntegralResult(value, err, n_used),
            )
        while True:
            neg_e, key = heapq.heappop(heap)
            if key in panels:
                break
        a, b, v, e = panels.pop(key)
        m = 0.5 * (a + b)
        (v1, v2), (e1, e2) = _panel_batch(f, np.array([a, m]), np.array([m, b]))
        for aa, bb, vv, ee in ((a, m, v1, e1), (m, b, v2, e2)):
            panels[counter] = (aa, bb, vv, ee)
            heapq.heappush(heap, (-ee, counter))
            counter += 1
        n_used += 1
        tot_v += (v1 + v2) - v
        tot_e += (e1 + e2) - e
        if tot_e <= max(cfg.abs_tol, cfg.rel_tol * abs(tot_v)):
            tot_v, tot_e = totals()  # re-sum exactly before declaring victory
    value, err = totals()
    return value, err, n_used


def integrate_interval(
    f, a: float, b: float, config: Optional[QuadratureConfig] = None,
    breakpoints: Sequence[float] = (),
) -> IntegralResult:
    """Adaptive integral of f over the finite interval [a, b]."""
    cfg = config or QuadratureConfig()
    pts = [a, b] + [p for p in breakpoints if a < p < b]
    if cfg.oscillation_period:
        pts.extend(_period_edges(a, b, cfg.oscillation_period))
    value, err, n = _adaptive(f, pts, cfg)
    return IntegralResult(value, err, n)


def _period_edges(a: float, b: float, h: float):
    """Panel edges aligned to multiples of the half-period width h on [a, b]."""
    span = b - a
    if span <= h:
        return []
    chunk = h * max(1, 2 ** math.ceil(math.log2(max(span / h / 256.0, 1.0))))
    k0, k1 = math.ceil(a / chunk), math.floor(b / chunk)
    return [k * chunk for k in range(k0, k1 + 1) if a < k * chunk < b]


# ---------------------------------------------------------------------------
# shared singular head: int_0^eps xi^{-alpha} (a + b ln xi) G(xi) dxi
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerLogHead:
    """Integrable power(-log) endpoint factor xi^{-alpha}(a + b ln xi) times a
    smooth profile G on [0, eps]."""

    alpha: float
    eps: float
    G: Callable[[np.ndarray], np.ndarray]
    a: float = 1.0
    b: float = 0.0


def power_log_head(head: PowerLogHead, cfg: QuadratureConfig):
    """Exact treatment of the singular head via xi = eps * v^{1/(1-alpha)}.

    The substitution absorbs xi^{-alpha} into the Jacobian, leaving smooth
    unit-interval integrals (plus a mildly log-singular one handled with an
    analytic [0, delta] slice).  alpha >= 1 is refused: the head diverges.
    """
    alpha, eps = head.alpha, head.eps
    if alpha >= 1.0:
        raise QuadratureError(
            f"power head xi^-{alpha:g} is not integrable at 0 (requires alpha < 1)"
        )
    if alpha <= -0.0 and head.b == 0.0 and alpha == 0.0:
        pass  # plain smooth head also fine through the same route
    beta = 1.0 / (1.0 - alpha)
    pref = eps ** (1.0 - alpha) * beta

    def G_of_v(v):
        v = np.asarray(v, dtype=float)
        with np.errstate(under="ignore"):
            xi = eps * np.power(v, beta)
        return np.asarray(head.G(xi), dtype=float)

    inner_cfg = QuadratureConfig(rel_tol=cfg.rel_tol, abs_tol=0.0,
                                 max_panels=cfg.max_panels)
    vA, eA, nA = _adaptive(G_of_v, [0.0, 0.25, 1.0], inner_cfg)
    value = pref * (head.a + head.b * math.log(eps)) * vA
    err = pref * abs(head.a + head.b * math.log(eps)) * eA
    n = nA
    if head.b != 0.0:
        delta = 1e-12

        def G_ln(v):
            v = np.asarray(v, dtype=float)
            return G_of_v(v) * np.log(v)

        vB, eB, nB = _adaptive(G_ln, [delta, 1e-9, 1e-6, 1e-3, 1.0], inner_cfg)
        vB += float(G_of_v(np.array([0.0]))[0]) * delta * (math.log(delta) - 1.0)
        value += pref * head.b * beta * vB
        err += pref * abs(head.b) * beta * eB
        n += nB
    return value, err, n


# ---------------------------------------------------------------------------
# tail term algebra: coef * xi^{-m} * ln^i(xi) * F(c xi^p)
# ---------------------------------------------------------------------------

def _theta_max():
    # argmax of theta solves e^{-u}(1 + u + u^2) = 1; Newton from u = 1.8
    u = 1.8
    for _ in range(40):
        g = math.exp(-u) * (1 + u + u * u) - 1.0
        dg = math.exp(-u) * (u - u * u)
        unew = u - g / dg
        if abs(unew - u) < 1e-15:
            u = unew
            break
        u = unew
    return u, float(theta(u))


_THETA_ARGMAX, _THETA_SUP = _theta_max()


def _f_eval(fkey: str, u):
    if fkey == "one":
        return np.ones_like(u)
    if fkey == "sigma":
        return sigma(u)
    if fkey == "theta":
        return theta(u)
    if fkey == "inv":
        with np.errstate(divide="ignore"):
            return 1.0 / u
    if fkey.startswith("exp"):
        j = int(fkey[3:])
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            out = np.where(np.isinf(u), 0.0, u**j * np.exp(-np.minimum(u, 745.0)))
        return out
    raise KeyError(fkey)


def _f_sup(fkey: str, u0: float) -> float:
    """sup over [u0, inf) of |F| (u is increasing along the tail)."""
    if fkey == "one":
        return 1.0
    if fkey == "sigma":
        return float(sigma(u0))
    if fkey == "theta":
        return float(theta(u0)) if u0 >= _THETA_ARGMAX else _THETA_SUP
    if fkey == "inv":
        return 1.0 / u0 if u0 > 0 else math.inf
    if fkey.startswith("exp"):
        j = int(fkey[3:])
        if u0 >= j:
            return float(u0**j * math.exp(-u0)) if u0 < 745 else 0.0
        return (j / math.e) ** j if j > 0 else 1.0
    raise KeyError(fkey)


_U_DF = {
    "one": (),
    "sigma": ((-1.0, "theta"),),
    "theta": ((1.0, "exp1"), (-1.0, "theta")),
    "inv": ((-1.0, "inv"),),
}


def _u_df(fkey: str):
    """u * dF/du expressed back in the algebra."""
    if fkey in _U_DF:
        return _U_DF[fkey]
    j = int(fkey[3:])
    return ((float(j), fkey), (-1.0, f"exp{j + 1}"))


def _diff_terms(terms: dict, p: float) -> dict:
    out: dict = {}

    def add(key, v):
        if v != 0.0:
            out[key] = out.get(key, 0.0) + v

    for (m, i, fk), coef in terms.items():
        add((m + 1.0, i, fk), -m * coef)
        if i > 0:
            add((m + 1.0, i - 1, fk), i * coef)
        for cf, fk2 in _u_df(fk):
            add((m + 1.0, i, fk2), p * coef * cf)
    return out


def _eval_terms(terms: dict, x, c: float, p: float):
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", under="ignore"):
        u = c * np.power(x, p)
    lnx = np.log(x)
    cache: dict = {}
    acc = np.zeros_like(x)
    for (m, i, fk), coef in terms.items():
        if fk not in cache:
            cache[fk] = _f_eval(fk, u)
        with np.errstate(under="ignore"):
            t = coef * np.power(x, -m) * cache[fk]
        if i:
            t = t * lnx**i
        acc = acc + t
    return acc


def _powlog_int(m: float, i: int, X: float) -> float:
    """Closed form of int_X^inf xi^{-m} ln^i(xi) dxi for m > 1, X > 1."""
    if m <= 1.0:
        raise QuadratureError(f"tail power xi^-{m:g} does not decay (requires m > 1)")
    lx = math.log(X)
    s = 0.0
    for k in range(i + 1):
        s += math.comb(i, k) * lx ** (i - k) * math.factorial(k) / (m - 1.0) ** (k + 1)
    return X ** (1.0 - m) * s


def _abs_tail_bound(terms: dict, X: float, c: float, p: float) -> float:
    u0 = c * X**p
    return math.fsum(
        abs(coef) * _f_sup(fk, u0) * _powlog_int(m, i, X)
        for (m, i, fk), coef in terms.items()
    )


@dataclass(frozen=True)
class TailGroup:
    """One kernel group of the tail integrand: kernel(omega xi) * sum(terms)."""

    terms: dict            # (m, i, fkey) -> coef
    kernel: str = "dc"     # "dc" | "cos" | "sin"
    omega: float = 0.0


@dataclass(frozen=True)
class TailModel:
    """Full tail description beyond the cut: u = c xi^p inside every F."""

    groups: tuple
    c: float
    p: float
    cut: float
    extra_bound: float = 0.0   # e.g. truncation of an asymptotic expansion

    def evaluate(self, tol_abs: float):
        value = 0.0
        bound = self.extra_bound
        for g in self.groups:
            if g.kernel == "dc":
                v, b = _dc_tail(g.terms, self.cut, self.c, self.p, tol_abs)
            else:
                v, b = _osc_tail(g.terms, self.cut, g.omega, g.kernel, self.c,
                                 self.p, tol_abs)
            value += v
            bound += b
        return value, bound


def _dc_tail(terms: dict, X: float, c: float, p: float, tol_abs: float):
    """Geometric-mesh Gauss quadrature of the non-oscillatory tail part."""
    value = 0.0
    lo = X
    for _ in range(80):
        hi = 2.0 * lo
        half, mid = 0.5 * (hi - lo), 0.5 * (hi + lo)
        xs = mid + half * _NODES32
        value += half * float(_eval_terms(terms, xs, c, p) @ _WEIGHTS32)
        lo = hi
        rem = _abs_tail_bound(terms, lo, c, p)
        if rem < tol_abs:
            return value, rem
    return value, _abs_tail_bound(terms, lo, c, p)


def _osc_tail(terms: dict, X: float, w: float, kind: str, c: float, p: float,
              tol_abs: float, max_steps: int = 9):
    """Repeated analytic integration by parts of int_X^inf kernel(w xi) t(xi)."""
    s0, c0 = math.sin(w * X), math.cos(w * X)
    acc = 0.0
    mult = 1.0
    cur = dict(terms)
    bound = math.inf
    for _ in range(max_steps):
        tX = float(_eval_terms(cur, np.array([X]), c, p)[0])
        if kind == "cos":
            acc += mult * (-s0 * tX / w)
            mult *= -1.0 / w
            kind = "sin"
        else:
            acc += mult * (c0 * tX / w)
            mult *= 1.0 / w
            kind = "cos"
        cur = _diff_terms(cur, p)
        bound = abs(mult) * _abs_tail_bound(cur, X, c, p)
        if bound < tol_abs:
            break
    return acc, bound


# ---------------------------------------------------------------------------
# public half-line / radial entry points
# ---------------------------------------------------------------------------

def integrate_halfline(
    f,
    config: Optional[QuadratureConfig] = None,
    *,
    envelope: Optional[tuple] = None,
    tail_model: Optional[TailModel] = None,
    breakpoints: Sequence[float] = (),
    head: Optional[PowerLogHead] = None,
) -> IntegralResult:
    """Integral of f over (0, inf).

    Beyond the tail cut the integral is either *bounded* by the declared
    envelope |f| <= C xi^{-q} (fold C xi_cut^{1-q}/(q-1) into tail_bound) or
    *evaluated* by the given TailModel.  An optional PowerLogHead treats an
    integrable endpoint singularity exactly.
    """
    cfg = config or QuadratureConfig()
    if envelope is not None:
        C, q = envelope
        if q <= 1.0:
            raise QuadratureError(f"tail envelope exponent must exceed 1, got q={q}")
    if tail_model is not None:
        X = tail_model.cut
    elif cfg.tail_cut is not None:
        X = cfg.tail_cut
    elif envelope is not None:
        # pick the cut so the envelope bound meets the absolute tolerance
        C, q = envelope
        target = max(cfg.abs_tol, 1e-15)
        X = max(64.0, (C / ((q - 1.0) * target)) ** (1.0 / (q - 1.0)))
        X = min(X, 1e9)
    else:
        raise QuadratureError("half-line integral needs an envelope or a tail model")

    a0 = 0.0
    head_val = head_err = 0.0
    n_head = 0
    if head is not None:
        head_val, head_err, n_head = power_log_head(head, cfg)
        a0 = head.eps
    pts = [a0, X] + [p for p in breakpoints if a0 < p < X]
    if cfg.oscillation_period:
        pts.extend(_period_edges(a0, X, cfg.oscillation_period))
    value, err, n = _adaptive(f, pts, cfg)
    value += head_val
    err += head_err
    tail_bound = 0.0
    if tail_model is not None:
        scale = max(abs(value), cfg.abs_tol)
        tol_abs = max(cfg.abs_tol, 0.25 * cfg.rel_tol * scale)
        tval, tbound = tail_model.evaluate(tol_abs)
        value += tval
        tail_bound = tbound
    elif envelope is not None:
        C, q = envelope
        tail_bound = C * X ** (1.0 - q) / (q - 1.0)
    return IntegralResult(value, err, n + n_head, tail_bound)


def integrate_radial(n: int, g, config: Optional[QuadratureConfig] = None,
                     **kwargs) -> IntegralResult:
    """int_{R^n} g(|xi|) dxi = omega_{n-1} int_0^inf g(rho) rho^{n-1} drho."""
    if n not in SPHERE_SURFACE:
        raise ValueError(f"radial reduction supports n in {{1,2,3}}, got {n}")
    w = SPHERE_SURFACE[n]

    if n == 1:
        weighted = g
    else:
        def weighted(rho):
            rho = np.asarray(rho, dtype=float)
            return np.asarray(g(rho), dtype=float) * rho ** (n - 1)

    res = integrate_halfline(weighted, config, **kwargs)
    return IntegralResult(w * res.value, w * res.error_estimate,
                          res.panels_used, w * res.tail_bound)
