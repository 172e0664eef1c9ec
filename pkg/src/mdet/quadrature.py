"""Log-space quadrature for half-line integrals of sharply peaked integrands.

Computes log( integral_lo^inf exp(psi(x)) dx ) without ever forming exp(psi):
the integrand's log is evaluated on double-exponential nodes and accumulated
by peak-shifted log-sum-exp, so results like log(mu_40) = 800 for a lognormal
come out directly.

Method
------
1. Substitute u = log x.  This removes algebraic endpoint behaviour at 0
   (x^c factors become exponential decay in u) and turns every catalog-type
   integrand x^n f(x) into a smooth single-peak function of u with O(1) width.
2. Locate the peak of g(u) = psi(e^u) + u by a coarse scan plus
   golden-section refinement.
3. Truncate where g has dropped `drop` nats below the peak (default 45;
   truncated tail <= e^-45 / slope_min ~ 1e-18 of the total), after checking
   that the tail is actually decaying: the log-slope in d/d(log x) at the
   last panel must be <= -slope_min, mirroring a decay requirement of
   (1+delta)/x on the x-scale.  Otherwise the integral is refused.
4. Integrate each side of the peak with the tanh-sinh (double-exponential)
   rule, doubling the node density per level until the log-result moves by
   less than `tol`.

Only nonnegative lower limits and an infinite upper limit are supported;
two-sided densities are handled by the callers one half-line at a time.
Arguments x stay below e^690, so densities that square their argument are
safe up to u ~ 345; every catalog flow peaks far below that.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import QuadratureError, TailDecayError
from .logspace import LOG_ZERO, log_sum

# hard caps on the log-x working range; exp(u) must stay a normal double
_U_FLOOR = -350.0
_U_CAP = 690.0
_T_MAX = 4.5  # tanh-sinh truncation in the transform variable

LogIntegrand = Callable[[np.ndarray], np.ndarray]


def _g_factory(log_fn: LogIntegrand) -> Callable[[np.ndarray], np.ndarray]:
    """Integrand in u = log x coordinates, including the Jacobian."""

    def g(u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        with np.errstate(all="ignore"):
            vals = np.asarray(log_fn(np.exp(u)), dtype=float) + u
        if np.any(np.isnan(vals)) or np.any(vals == np.inf):
            raise QuadratureError("integrand log evaluated to NaN/+inf")
        return vals

    return g


def _golden_max(g, lo: float, hi: float, iters: int = 90) -> tuple[float, float]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = float(g(np.array([c]))[0])
    fd = float(g(np.array([d]))[0])
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = float(g(np.array([c]))[0])
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = float(g(np.array([d]))[0])
        if b - a < 1e-12 * max(1.0, abs(a)):
            break
    u = 0.5 * (a + b)
    return u, float(g(np.array([u]))[0])


def _find_drop_right(g, u_peak: float, g_peak: float, drop: float,
                     slope_min: float) -> float:
    target = g_peak - drop
    step = 0.5
    prev = u_peak
    u = u_peak + step
    while True:
        if u > _U_CAP:
            tail = g(np.array([_U_CAP]))[0]
            if tail > target:
                raise TailDecayError(
                    "integrand has not dropped below the truncation "
                    f"threshold by x = e^{_U_CAP:.0f}")
            u = _U_CAP
            break
        if g(np.array([u]))[0] <= target:
            break
        prev = u
        step *= 2.0
        u = prev + step
    lo, hi = prev, u
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if g(np.array([mid]))[0] <= target:
            hi = mid
        else:
            lo = mid
    u_hi = hi
    _check_tail_decay(g, u_peak, u_hi, slope_min)
    return u_hi


def _check_tail_decay(g, u_peak: float, u_hi: float,
                      slope_min: float) -> None:
    """The log-integrand must actually be falling where the truncation
    happens.  The slope is measured at the last *finite* sample before
    u_hi: a density whose log collapses to -inf (e.g. an argument
    overflowing inside the user's log_f) would otherwise fake a cliff and
    hide a rising, divergent tail behind it."""
    samples = np.linspace(u_peak, u_hi, 33)
    vals = g(samples)
    finite = np.isfinite(vals)
    if np.count_nonzero(finite) < 2:
        raise QuadratureError("integrand not finite near its peak")
    idx = np.nonzero(finite)[0]
    i2 = idx[-1]
    i1 = idx[-2]
    du = samples[i2] - samples[i1]
    if du <= 0.0:
        raise QuadratureError("degenerate tail panel")
    slope = (vals[i2] - vals[i1]) / du
    if slope > -slope_min:
        raise TailDecayError(
            f"log-integrand slope {slope:.3g} at the last panel is above "
            f"-{slope_min} per log-x unit; tail decay too slow to certify "
            "convergence")


def _find_drop_left(g, u_peak: float, g_peak: float, drop: float,
                    u_floor: float, floor_is_boundary: bool) -> float:
    target = g_peak - drop
    if u_floor >= u_peak:
        return u_floor
    if g(np.array([u_floor]))[0] > target:
        if floor_is_boundary:
            return u_floor  # finite lower limit: no truncation involved
        # open left end not resolved down to the drop threshold
        pair = g(np.array([u_floor, u_floor + 0.25]))
        gf = float(pair[0])
        sl = float(pair[1] - pair[0]) / 0.25
        if gf - g_peak > -40.0 or sl < 0.01:
            raise QuadratureError(
                "integrand mass near x=0 cannot be resolved within the "
                "working range")
        return u_floor
    step = 0.5
    prev = u_peak
    u = u_peak - step
    while u > u_floor and g(np.array([u]))[0] > target:
        prev = u
        step *= 2.0
        u = prev - step
    lo, hi = max(u, u_floor), prev
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if g(np.array([mid]))[0] <= target:
            lo = mid
        else:
            hi = mid
    return lo


def _logcosh(z: np.ndarray) -> np.ndarray:
    az = np.abs(z)
    return az + np.log1p(np.exp(-2.0 * az)) - math.log(2.0)


def _log_tanh_sinh_level(g, a: float, b: float, h: float) -> float:
    """Log of the tanh-sinh approximation to int_a^b exp(g(u)) du at mesh h."""
    n = int(math.ceil(_T_MAX / h))
    t = h * np.arange(-n, n + 1)
    s = 0.5 * math.pi * np.sinh(t)
    mid = 0.5 * (a + b)
    rad = 0.5 * (b - a)
    x = mid + rad * np.tanh(s)
    log_w = (math.log(rad) + math.log(0.5 * math.pi) + _logcosh(t)
             - 2.0 * _logcosh(s))
    vals = g(x)
    return log_sum(log_w + vals) + math.log(h)


def _log_panel(g, a: float, b: float, max_level: int, tol: float,
               early_stop: bool) -> float:
    if b - a <= 1e-13 * max(1.0, abs(a)):
        return LOG_ZERO
    prev = None
    result = LOG_ZERO
    for level in range(2, max_level + 1):
        result = _log_tanh_sinh_level(g, a, b, 2.0 ** (-level))
        if prev is not None and early_stop and abs(result - prev) <= tol:
            return result
        prev = result
    return result


def log_integral(log_fn: LogIntegrand, lo: float = 0.0, *,
                 max_level: int = 8, drop: float = 45.0, tol: float = 1e-11,
                 slope_min: float = 0.05, early_stop: bool = True) -> float:
    """log of the integral of exp(log_fn(x)) over [lo, infinity).

    log_fn must accept and return numpy arrays (log of the integrand; -inf
    where the integrand vanishes).  Raises TailDecayError when the upper
    tail does not pass the decay test, QuadratureError on other failures.
    """
    if lo < 0.0:
        raise QuadratureError("lower limit must be nonnegative")
    g = _g_factory(log_fn)

    if lo > 0.0:
        u_floor = math.log(lo)
        floor_is_boundary = True
        if u_floor > _U_CAP - 1.0:
            raise QuadratureError("lower limit too large for working range")
    else:
        u_floor = _U_FLOOR
        floor_is_boundary = False

    scan = np.linspace(max(u_floor, _U_FLOOR), _U_CAP, 2048)
    gv = g(scan)
    if np.all(gv == LOG_ZERO):
        return LOG_ZERO
    i = int(np.argmax(gv))
    lo_b = scan[max(i - 1, 0)]
    hi_b = scan[min(i + 1, scan.size - 1)]
    u_peak, g_peak = _golden_max(g, lo_b, hi_b)
    if not math.isfinite(g_peak):
        raise QuadratureError("integrand peak is not finite")
    # boundary peak: golden search cannot beat the boundary value
    if floor_is_boundary:
        g_at_lo = float(g(np.array([u_floor]))[0])
        if g_at_lo >= g_peak:
            u_peak, g_peak = u_floor, g_at_lo

    u_hi = _find_drop_right(g, u_peak, g_peak, drop, slope_min)
    u_lo = _find_drop_left(g, u_peak, g_peak, drop, u_floor,
                           floor_is_boundary)

    left = _log_panel(g, u_lo, u_peak, max_level, tol, early_stop)
    right = _log_panel(g, u_peak, u_hi, max_level, tol, early_stop)
    return float(np.logaddexp(left, right))
