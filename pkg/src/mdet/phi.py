"""Tail-shift machinery: y(x) = x + phi(x), its inverse, and the shifted
step varphi(y) = y - x(y) with numerical certification of the three
asymptotic conditions

    (a) varphi'(y) in [0, 1]      (b) varphi(y) <= C+ log y
    (c) y varphi'(y) <= C+        for all y >= y*.

The three built-in families:

    logpow          phi(x) = a (log x)^alpha,                 alpha in [0,1]
    logpow+loglog   phi(x) = a ((log x)^alpha + log log x),   alpha in [0,1)
    logpow*loglog   phi(x) = a (log x)^alpha log log x,       alpha in [0,1)

Certification is a finite-range check of an asymptotic hypothesis: sups of
varphi/log y and y varphi' are taken over a geometric grid, inflated by 5%
for C+, and the certificate additionally requires the per-decade sups to
have stopped growing (otherwise any phi whatsoever would admit some finite
C+ over a finite grid; a linear phi must come out invalid).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import InputError, MdetError

LOG_POW = "logpow"
LOG_POW_PLUS_LOGLOG = "logpow+loglog"
LOG_POW_TIMES_LOGLOG = "logpow*loglog"
CUSTOM = "custom"

FAMILIES = (LOG_POW, LOG_POW_PLUS_LOGLOG, LOG_POW_TIMES_LOGLOG)


@dataclass(frozen=True)
class PhiSpec:
    family: str
    a: Optional[float]
    alpha: Optional[float]
    x_min: float
    phi: Callable[[np.ndarray], np.ndarray]
    phi_prime: Callable[[np.ndarray], np.ndarray]
    label: str


@dataclass(frozen=True)
class ConditionCertificate:
    c_plus: float
    y_star: float
    grid_max: float
    margins: tuple[float, float, float]  # observed slack in (a), (b), (c)
    valid: bool
    failing_condition: Optional[str] = None
    sup_b: float = math.nan  # sup of varphi(y)/log y over [y*, grid_max]
    sup_c: float = math.nan  # sup of y varphi'(y) over [y*, grid_max]


def make_phi(family: str, a: float, alpha: float) -> PhiSpec:
    if not (a > 0.0 and math.isfinite(a)):
        raise InputError(f"phi amplitude a must be positive, got {a}")
    if family == LOG_POW:
        if not 0.0 <= alpha <= 1.0:
            raise InputError(f"logpow requires alpha in [0,1], got {alpha}")
        return _logpow(a, alpha)
    if family == LOG_POW_PLUS_LOGLOG:
        if not 0.0 <= alpha < 1.0:
            raise InputError(
                f"logpow+loglog requires alpha in [0,1), got {alpha}")
        return _logpow_plus_loglog(a, alpha)
    if family == LOG_POW_TIMES_LOGLOG:
        if not 0.0 <= alpha < 1.0:
            raise InputError(
                f"logpow*loglog requires alpha in [0,1), got {alpha}")
        return _logpow_times_loglog(a, alpha)
    raise InputError(f"unknown phi family '{family}'; known: {FAMILIES}")


def _logpow(a: float, alpha: float) -> PhiSpec:
    if alpha == 0.0:
        def phi(x):
            return np.full_like(np.asarray(x, dtype=float), a)

        def phi_prime(x):
            return np.zeros_like(np.asarray(x, dtype=float))
    elif alpha == 1.0:
        def phi(x):
            return a * np.log(np.asarray(x, dtype=float))

        def phi_prime(x):
            return a / np.asarray(x, dtype=float)
    else:
        def phi(x):
            return a * np.log(np.asarray(x, dtype=float)) ** alpha

        def phi_prime(x):
            x = np.asarray(x, dtype=float)
            with np.errstate(divide="ignore"):
                return a * alpha * np.log(x) ** (alpha - 1.0) / x

    return PhiSpec(LOG_POW, a, alpha, 1.0, phi, phi_prime,
                   f"logpow(a={a},alpha={alpha})")


def _logpow_plus_loglog(a: float, alpha: float) -> PhiSpec:
    def phi(x):
        lx = np.log(np.asarray(x, dtype=float))
        return a * (lx ** alpha + np.log(lx))

    def phi_prime(x):
        x = np.asarray(x, dtype=float)
        lx = np.log(x)
        if alpha == 0.0:
            return a / (x * lx)
        with np.errstate(divide="ignore"):
            return a * (alpha * lx ** (alpha - 1.0) + 1.0 / lx) / x

    return PhiSpec(LOG_POW_PLUS_LOGLOG, a, alpha, math.e, phi, phi_prime,
                   f"logpow+loglog(a={a},alpha={alpha})")


def _logpow_times_loglog(a: float, alpha: float) -> PhiSpec:
    def phi(x):
        lx = np.log(np.asarray(x, dtype=float))
        return a * lx ** alpha * np.log(lx)

    def phi_prime(x):
        x = np.asarray(x, dtype=float)
        lx = np.log(x)
        # d/dx [a L^alpha log L] = (a/x) L^(alpha-1) (alpha log L + 1)
        return a * lx ** (alpha - 1.0) * (alpha * np.log(lx) + 1.0) / x

    return PhiSpec(LOG_POW_TIMES_LOGLOG, a, alpha, math.e, phi, phi_prime,
                   f"logpow*loglog(a={a},alpha={alpha})")


def custom_phi(phi: Callable, phi_prime: Callable, x_min: float,
               label: str = "custom") -> PhiSpec:
    """Wrap a user-supplied phi; both phi and phi' must be closed-form
    vectorized callables (no numerical differentiation for certificates)."""

    def vec(fn):
        def wrapped(x):
            return np.asarray(fn(np.asarray(x, dtype=float)), dtype=float)
        return wrapped

    return PhiSpec(CUSTOM, None, None, float(x_min), vec(phi),
                   vec(phi_prime), label)


def forward(phi: PhiSpec, x) -> np.ndarray | float:
    """y(x) = x + phi(x) for x >= x_min."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < phi.x_min * (1.0 - 1e-12)):
        raise InputError(
            f"x below the domain start {phi.x_min} of {phi.label}")
    out = arr + phi.phi(arr)
    return float(out) if arr.ndim == 0 else out


def inverse(phi: PhiSpec, y, rtol: float = 1e-12, max_iter: int = 200
            ) -> np.ndarray | float:
    """x(y) with |y(x) - y| <= rtol * max(1, y): safeguarded Newton with a
    bisection fallback on the bracket [x_min, y]."""
    arr = np.atleast_1d(np.asarray(y, dtype=float))
    y0 = float(forward(phi, phi.x_min))
    if np.any(arr < y0 * (1.0 - 1e-12)):
        raise InputError(f"y below the range start {y0} of {phi.label}")

    lo = np.full_like(arr, phi.x_min)
    hi = np.maximum(arr, phi.x_min)
    # forward(x_min) <= y and forward(y) = y + phi(y) >= y bracket the root
    x = np.clip(arr - phi.phi(np.maximum(arr, phi.x_min)), lo, hi)
    tol = rtol * np.maximum(1.0, np.abs(arr))
    for _ in range(max_iter):
        r = x + phi.phi(x) - arr
        if np.all(np.abs(r) <= tol):
            break
        gt = r > 0
        hi = np.where(gt, x, hi)
        lo = np.where(~gt, x, lo)
        with np.errstate(all="ignore"):
            step = r / (1.0 + phi.phi_prime(x))
            xn = x - step
        bad = ~np.isfinite(xn) | (xn <= lo) | (xn >= hi)
        x = np.where(bad, 0.5 * (lo + hi), xn)
    else:
        raise MdetError(
            f"inverse of {phi.label} did not converge "
            "(mis-specified custom phi?)")
    if np.isscalar(y) or np.asarray(y).ndim == 0:
        return float(x[0])
    return x


def varphi_and_prime(phi: PhiSpec, y) -> tuple:
    """varphi(y) = y - x(y) = phi(x(y)) and varphi'(y) by the chain rule
    phi'(x) / (1 + phi'(x)) at x = x(y)."""
    x = inverse(phi, y)
    xa = np.asarray(x, dtype=float)
    vp = phi.phi(xa)
    d = phi.phi_prime(xa)
    with np.errstate(all="ignore"):
        vpp = np.where(np.isfinite(d), d / (1.0 + d), 1.0)
    if np.isscalar(y) or np.asarray(y).ndim == 0:
        return float(vp), float(vpp)
    return vp, vpp


def certify_conditions(phi: PhiSpec, y_star_hint: Optional[float] = None,
                       grid_max: float = 1e8, points: int = 10_000
                       ) -> ConditionCertificate:
    """Search a geometric grid for the smallest y* from which (a)-(c) hold
    with C+ = 1.05 x the empirical sups; valid=False with the failing
    condition named when the sups have not stabilized."""
    y0 = float(forward(phi, phi.x_min))
    start = max(y_star_hint if y_star_hint is not None else 0.0, y0, 2.0)
    if grid_max <= start * 1.5:
        raise InputError("grid_max must exceed the starting point")

    grid = np.geomspace(start, grid_max, points)
    x = np.asarray(inverse(phi, grid), dtype=float)
    vp = phi.phi(x)
    d = phi.phi_prime(x)
    with np.errstate(all="ignore"):
        vpp = np.where(np.isfinite(d), d / (1.0 + d), 1.0)
    q_b = vp / np.log(grid)
    q_c = grid * vpp

    # condition (a) must hold from y* on: find the earliest suffix index
    ok_a = (vpp >= -1e-12) & (vpp <= 1.0 + 1e-12)
    suffix_ok = np.logical_and.accumulate(ok_a[::-1])[::-1]
    if not suffix_ok[-1]:
        return ConditionCertificate(
            c_plus=math.nan, y_star=math.nan, grid_max=grid_max,
            margins=(0.0, 0.0, 0.0), valid=False, failing_condition="(a)")
    i_star = int(np.argmax(suffix_ok))
    y_star = float(grid[i_star])

    # stabilization: per-decade sups of each quantity must have stopped
    # growing, else the asymptotic condition is being faked by a finite C+
    for name, q in (("(b)", q_b), ("(c)", q_c)):
        last = _decade_sup(grid, q, grid_max / 10.0, grid_max)
        prev = _decade_sup(grid, q, grid_max / 100.0, grid_max / 10.0)
        if last > 1.05 * prev + 1e-300:
            return ConditionCertificate(
                c_plus=math.nan, y_star=y_star, grid_max=grid_max,
                margins=(0.0, 0.0, 0.0), valid=False, failing_condition=name,
                sup_b=float(np.max(q_b[i_star:])),
                sup_c=float(np.max(q_c[i_star:])))

    sup_b = float(np.max(q_b[i_star:]))
    sup_c = float(np.max(q_c[i_star:]))
    c_plus = 1.05 * max(sup_b, sup_c)
    tail = slice(i_star, None)
    margin_a = float(np.min(np.minimum(vpp[tail], 1.0 - vpp[tail])))
    margin_b = float(np.min(c_plus * np.log(grid[tail]) - vp[tail]))
    margin_c = float(np.min(c_plus - q_c[tail]))
    return ConditionCertificate(
        c_plus=c_plus, y_star=y_star, grid_max=grid_max,
        margins=(max(margin_a, 0.0), max(margin_b, 0.0), max(margin_c, 0.0)),
        valid=True, sup_b=sup_b, sup_c=sup_c)


def _decade_sup(grid: np.ndarray, q: np.ndarray, lo: float, hi: float
                ) -> float:
    mask = (grid >= lo) & (grid <= hi)
    if not np.any(mask):
        return -math.inf
    return float(np.max(q[mask]))
