"""Windowed limsup estimates for the three tail-ratio quantities.

gamma1 (full line):  f(x + sign(x) phi(|x|)) / f(x), both tails
gamma2 (half line):  g((x + phi(x))^2) / g(x^2), plus phi(x)/x -> 0
gamma3 (half line):  g(x + phi(x)) / g(x)

A limsup cannot be evaluated at infinity; it is approximated by the max of
the ratio over the last K geometric decade windows of a grid reaching
x_end (default 1e8).  Every ratio is a difference of log-densities, so the
estimates are scale-invariant and immune to tail underflow.

Verdict policy (the underlying theorems only ask for "< 1"):
SATISFIED   extrapolated <= 1 - margin and the last-K window sups are not
            still rising (a rising sup sequence below 1 means the finite
            range has not reached the asymptotic regime yet);
FAILED      the last-K sups all sit within margin/2 of 1 and are
            non-decreasing -- the ratio is pinned at 1, the sufficient
            condition cannot certify anything (this never claims
            indeterminacy);
INCONCLUSIVE everything else, including any side-condition failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .densities import SupportKind, TailDensity
from .errors import InputError
from .phi import PhiSpec

SATISFIED = "SATISFIED"
FAILED = "FAILED"
INCONCLUSIVE = "INCONCLUSIVE"

_MONO_RTOL = 1e-9


@dataclass(frozen=True)
class GridSpec:
    x_end: float = 1e8
    points_per_decade: int = 1250
    windows: int = 5
    margin: float = 0.05

    def __post_init__(self):
        if self.x_end <= 10.0:
            raise InputError("grid end must exceed 10")
        if not 0.0 < self.margin < 0.5:
            raise InputError("margin must lie in (0, 0.5)")
        if self.windows < 2:
            raise InputError("need at least 2 windows")


@dataclass(frozen=True)
class GammaEstimate:
    kind: str  # g1 | g2 | g3
    window_sups: tuple  # ((lo, hi, sup), ...) ascending
    extrapolated: float
    margin: float
    verdict: str
    side_condition_ok: bool = True
    extrapolated_plus: Optional[float] = None
    extrapolated_minus: Optional[float] = None
    label: str = field(default="")


def _decade_windows(x_start: float, x_end: float, ppd: int
                    ) -> list[tuple[float, float, np.ndarray]]:
    """Geometric decades anchored at x_end, lowest one clipped at x_start;
    window boundaries are exact grid points."""
    windows = []
    j = 0
    hi = x_end
    while hi > x_start * (1.0 + 1e-12):
        lo = max(x_end / 10.0 ** (j + 1), x_start)
        pts = np.geomspace(lo, hi, ppd + 1)
        pts[0] = lo
        pts[-1] = hi
        windows.append((lo, hi, pts))
        j += 1
        hi = x_end / 10.0 ** j
    if not windows:
        raise InputError(
            f"grid [{x_start}, {x_end}] spans no full decade")
    windows.reverse()
    return windows


def _window_sups(log_ratio: Callable[[np.ndarray], np.ndarray],
                 windows, label: str) -> np.ndarray:
    sups = np.empty(len(windows))
    for i, (_, _, pts) in enumerate(windows):
        diffs = np.asarray(log_ratio(pts), dtype=float)
        if np.any(np.isnan(diffs)) or np.any(diffs == math.inf):
            raise InputError(
                f"density '{label}' evaluated non-finite on the tail grid "
                "(tail positivity violated)")
        sups[i] = math.exp(float(np.max(diffs)))
    return sups


def _non_increasing(vals: np.ndarray) -> bool:
    return bool(np.all(vals[1:] <= vals[:-1] * (1.0 + _MONO_RTOL) + 1e-300))


def _non_decreasing(vals: np.ndarray) -> bool:
    return bool(np.all(vals[1:] >= vals[:-1] * (1.0 - _MONO_RTOL) - 1e-300))


def _verdict(sups: np.ndarray, k: int, margin: float, side_ok: bool) -> tuple:
    last = sups[-k:] if sups.size >= k else sups
    extrapolated = float(np.max(last))
    if not side_ok:
        return extrapolated, INCONCLUSIVE
    if extrapolated <= 1.0 - margin and _non_increasing(last):
        return extrapolated, SATISFIED
    if np.all(last >= 1.0 - 0.5 * margin) and _non_decreasing(last):
        return extrapolated, FAILED
    return extrapolated, INCONCLUSIVE


def _estimate(kind: str, d: TailDensity, phi: PhiSpec, grid: GridSpec,
              log_ratios: dict[str, Callable], side_ok: bool = True
              ) -> GammaEstimate:
    x_start = max(d.x0, phi.x_min)
    windows = _decade_windows(x_start, grid.x_end, grid.points_per_decade)
    per_side = {name: _window_sups(fn, windows, d.label)
                for name, fn in log_ratios.items()}
    combined = np.max(np.vstack(list(per_side.values())), axis=0)
    extrapolated, verdict = _verdict(combined, grid.windows, grid.margin,
                                     side_ok)
    k = grid.windows

    def _extr(vals):
        tail = vals[-k:] if vals.size >= k else vals
        return float(np.max(tail))

    return GammaEstimate(
        kind=kind,
        window_sups=tuple((lo, hi, float(s))
                          for (lo, hi, _), s in zip(windows, combined)),
        extrapolated=extrapolated,
        margin=grid.margin,
        verdict=verdict,
        side_condition_ok=side_ok,
        extrapolated_plus=_extr(per_side["plus"]) if "plus" in per_side else None,
        extrapolated_minus=_extr(per_side["minus"]) if "minus" in per_side else None,
        label=f"{kind}[{d.label}, {phi.label}]")


def gamma1(d: TailDensity, phi: PhiSpec, grid: GridSpec = GridSpec()
           ) -> GammaEstimate:
    """Two-sided ratio on a full-line density; the reported sup per window
    is the max of the two one-sided quantities."""
    if d.support is not SupportKind.HAMBURGER:
        raise InputError("gamma1 needs a full-line (Hamburger) density")

    def plus(x):
        return np.asarray(d.log_f(x + phi.phi(x)), dtype=float) \
            - np.asarray(d.log_f(x), dtype=float)

    def minus(x):
        return np.asarray(d.log_f(-x - phi.phi(x)), dtype=float) \
            - np.asarray(d.log_f(-x), dtype=float)

    return _estimate("g1", d, phi, grid, {"plus": plus, "minus": minus})


def gamma2(d: TailDensity, phi: PhiSpec, grid: GridSpec = GridSpec()
           ) -> GammaEstimate:
    """Squared-argument ratio on a half-line density, guarded by the side
    condition phi(x)/x -> 0 (checked at the grid end and for monotone
    decrease over the last decade)."""
    if d.support is not SupportKind.STIELTJES:
        raise InputError("gamma2 needs a half-line (Stieltjes) density")

    def plus(x):
        y = x + phi.phi(x)
        return np.asarray(d.log_f(y * y), dtype=float) \
            - np.asarray(d.log_f(x * x), dtype=float)

    side_ok = _side_condition_ok(phi, d, grid)
    return _estimate("g2", d, phi, grid, {"plus": plus}, side_ok=side_ok)


def gamma3(d: TailDensity, phi: PhiSpec, grid: GridSpec = GridSpec()
           ) -> GammaEstimate:
    if d.support is not SupportKind.STIELTJES:
        raise InputError("gamma3 needs a half-line (Stieltjes) density")

    def plus(x):
        return np.asarray(d.log_f(x + phi.phi(x)), dtype=float) \
            - np.asarray(d.log_f(x), dtype=float)

    return _estimate("g3", d, phi, grid, {"plus": plus})


def _side_condition_ok(phi: PhiSpec, d: TailDensity, grid: GridSpec) -> bool:
    if phi.phi(np.array([grid.x_end]))[0] / grid.x_end > 1e-3:
        return False
    x_start = max(d.x0, phi.x_min)
    lo = max(grid.x_end / 10.0, x_start)
    pts = np.geomspace(lo, grid.x_end, 64)
    q = phi.phi(pts) / pts
    return _non_increasing(q)
