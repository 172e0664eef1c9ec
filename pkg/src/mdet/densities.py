"""Densities with analytically known tails, plus the reference catalog.

Densities are stored and evaluated purely in log-space: a TailDensity is a
vectorized callable x -> log f(x) together with its support kind and a tail
threshold x0 beyond which the density is guaranteed positive and monotone
decreasing.  Ratios f(y)/f(x) downstream are always formed as differences
of logs, so unnormalized kernels only shift every log by a constant.

Catalog entries carry closed-form log absolute moments where the standard
parameterization admits them, and a literature determinacy classification
used as test fixtures (e.g. the lognormal is the classical indeterminate
example, Heyde 1963).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import InputError, UnknownDistributionError

LogDensity = Callable[[np.ndarray], np.ndarray]


class SupportKind(enum.Enum):
    HAMBURGER = "hamburger"  # support R, tails at +-inf
    STIELTJES = "stieltjes"  # support R+, tail at +inf


class Classification(enum.Enum):
    MDET = "M-det"
    MINDET = "M-indet"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TailDensity:
    """A density known through its log on its support.

    log_f must be finite (f strictly positive) for |x| >= x0 on the
    support; -inf is allowed only inside (-x0, x0).
    """

    support: SupportKind
    x0: float
    log_f: LogDensity
    label: str

    def __post_init__(self):
        if not (self.x0 > 0.0 and math.isfinite(self.x0)):
            raise InputError(f"x0 must be a positive real, got {self.x0}")
        self._check_tail_positivity()

    def _check_tail_positivity(self, points: int = 64) -> None:
        # coarse construction-time guard; the test suite runs the dense one
        xs = np.geomspace(self.x0, self.x0 * 1e6, points)
        sides = [xs] if self.support is SupportKind.STIELTJES else [xs, -xs]
        for side in sides:
            vals = np.asarray(self.log_f(side), dtype=float)
            if not np.all(np.isfinite(vals)):
                raise InputError(
                    f"density '{self.label}' is zero or undefined on its "
                    "tail; every tail condition assumes f > 0 there")


def evaluate_log_density(d: TailDensity, x) -> np.ndarray | float:
    """log f(x); raises if a STIELTJES density is queried below zero."""
    arr = np.asarray(x, dtype=float)
    if d.support is SupportKind.STIELTJES and np.any(arr < 0.0):
        raise InputError(
            f"density '{d.label}' lives on [0, inf); got a negative argument")
    out = np.asarray(d.log_f(arr), dtype=float)
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


@dataclass(frozen=True)
class CatalogEntry:
    density: TailDensity
    classification: Classification
    classification_source: str
    symmetric: bool = False
    # n -> log E[|X|^n] over the full support, exact closed form
    closed_form_log_abs_moment: Optional[Callable[[int], float]] = None
    params: tuple = field(default_factory=tuple)


def _positive(name: str, value: float) -> float:
    if not (value > 0.0 and math.isfinite(value)):
        raise InputError(f"parameter '{name}' must be positive, got {value}")
    return float(value)


_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _normal(mu: float, sigma: float) -> CatalogEntry:
    sigma = _positive("sigma", sigma)
    c = math.log(sigma) + _HALF_LOG_2PI

    def log_f(x):
        z = (np.asarray(x, dtype=float) - mu) / sigma
        return -0.5 * z * z - c

    cf = None
    if mu == 0.0:
        def cf(n: int) -> float:
            # E|X|^n = sigma^n 2^{n/2} Gamma((n+1)/2) / sqrt(pi)
            return (n * math.log(sigma) + 0.5 * n * math.log(2.0)
                    + math.lgamma(0.5 * (n + 1)) - 0.5 * math.log(math.pi))

    return CatalogEntry(
        density=TailDensity(SupportKind.HAMBURGER, max(1.0, abs(mu)),
                            log_f, f"normal({mu},{sigma})"),
        classification=Classification.MDET,
        classification_source="Carleman via m_2n=(2n-1)!!; Stoyanov (2013), Sec. 11",
        symmetric=(mu == 0.0),
        closed_form_log_abs_moment=cf,
        params=(mu, sigma))


def _half_normal(sigma: float) -> CatalogEntry:
    sigma = _positive("sigma", sigma)
    c = math.log(sigma) + _HALF_LOG_2PI - math.log(2.0)

    def log_f(x):
        z = np.asarray(x, dtype=float) / sigma
        return -0.5 * z * z - c

    def cf(n: int) -> float:
        return (n * math.log(sigma) + 0.5 * n * math.log(2.0)
                + math.lgamma(0.5 * (n + 1)) - 0.5 * math.log(math.pi))

    return CatalogEntry(
        density=TailDensity(SupportKind.STIELTJES, 1.0, log_f,
                            f"half_normal({sigma})"),
        classification=Classification.MDET,
        classification_source="moment generating function finite near 0 (classical)",
        closed_form_log_abs_moment=cf,
        params=(sigma,))


def _exponential(rate: float) -> CatalogEntry:
    rate = _positive("rate", rate)
    lr = math.log(rate)

    def log_f(x):
        return lr - rate * np.asarray(x, dtype=float)

    def cf(n: int) -> float:
        return math.lgamma(n + 1) - n * lr

    return CatalogEntry(
        density=TailDensity(SupportKind.STIELTJES, 1.0, log_f,
                            f"exponential({rate})"),
        classification=Classification.MDET,
        classification_source="moment generating function finite near 0 (classical)",
        closed_form_log_abs_moment=cf,
        params=(rate,))


def _gamma(shape: float, scale: float) -> CatalogEntry:
    shape = _positive("shape", shape)
    scale = _positive("scale", scale)
    c = math.lgamma(shape) + shape * math.log(scale)

    def log_f(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            return (shape - 1.0) * np.log(x) - x / scale - c

    def cf(n: int) -> float:
        return n * math.log(scale) + math.lgamma(shape + n) - math.lgamma(shape)

    x0 = max(1.0, (shape - 1.0) * scale)  # mode; monotone decreasing beyond
    return CatalogEntry(
        density=TailDensity(SupportKind.STIELTJES, x0, log_f,
                            f"gamma({shape},{scale})"),
        classification=Classification.MDET,
        classification_source="moment generating function finite near 0 (classical)",
        closed_form_log_abs_moment=cf,
        params=(shape, scale))


def _lognormal(mu: float, sigma: float) -> CatalogEntry:
    sigma = _positive("sigma", sigma)
    c = math.log(sigma) + _HALF_LOG_2PI

    def log_f(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            lx = np.log(x)
        z = (lx - mu) / sigma
        return -0.5 * z * z - lx - c

    def cf(n: int) -> float:
        return n * mu + 0.5 * (n * sigma) ** 2

    x0 = max(1.0, math.exp(mu - sigma * sigma))
    return CatalogEntry(
        density=TailDensity(SupportKind.STIELTJES, x0, log_f,
                            f"lognormal({mu},{sigma})"),
        classification=Classification.MINDET,
        classification_source="Heyde (1963); Stoyanov (2013), Sec. 11.4",
        closed_form_log_abs_moment=cf,
        params=(mu, sigma))


def _chi_squared(df: float) -> CatalogEntry:
    df = _positive("df", df)
    k2 = 0.5 * df
    c = k2 * math.log(2.0) + math.lgamma(k2)

    def log_f(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            return (k2 - 1.0) * np.log(x) - 0.5 * x - c

    def cf(n: int) -> float:
        return n * math.log(2.0) + math.lgamma(k2 + n) - math.lgamma(k2)

    return CatalogEntry(
        density=TailDensity(SupportKind.STIELTJES, max(1.0, df - 2.0),
                            log_f, f"chi_squared({df})"),
        classification=Classification.MDET,
        classification_source="gamma family; mgf finite near 0 (classical)",
        closed_form_log_abs_moment=cf,
        params=(df,))


def _weibull(shape: float, scale: float) -> CatalogEntry:
    shape = _positive("shape", shape)
    scale = _positive("scale", scale)
    c = math.log(shape) - shape * math.log(scale)

    def log_f(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            return c + (shape - 1.0) * np.log(x) - (x / scale) ** shape

    def cf(n: int) -> float:
        return n * math.log(scale) + math.lgamma(1.0 + n / shape)

    if shape >= 0.5:
        cls = Classification.MDET
        src = "Berg (1988): E^theta M-det on R+ iff theta <= 2"
    else:
        cls = Classification.MINDET
        src = "Berg (1988): E^theta M-indet for theta > 2"
    mode = scale * ((shape - 1.0) / shape) ** (1.0 / shape) if shape > 1 else 0.0
    return CatalogEntry(
        density=TailDensity(SupportKind.STIELTJES, max(1.0, mode), log_f,
                            f"weibull({shape},{scale})"),
        classification=cls,
        classification_source=src,
        closed_form_log_abs_moment=cf,
        params=(shape, scale))


def _generalized_gamma(shape_d: float, power_p: float,
                       scale_a: float) -> CatalogEntry:
    d = _positive("shape_d", shape_d)
    p = _positive("power_p", power_p)
    a = _positive("scale_a", scale_a)
    c = math.log(p) - d * math.log(a) - math.lgamma(d / p)

    def log_f(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            return c + (d - 1.0) * np.log(x) - (x / a) ** p

    def cf(n: int) -> float:
        return n * math.log(a) + math.lgamma((d + n) / p) - math.lgamma(d / p)

    if p >= 0.5:
        cls = Classification.MDET
        src = "Pakes (2001); Stoyanov (2013), Sec. 11"
    else:
        cls = Classification.MINDET
        src = "Pakes (2001): Stieltjes-indeterminate for power < 1/2"
    mode = a * ((d - 1.0) / p) ** (1.0 / p) if d > 1 else 0.0
    return CatalogEntry(
        density=TailDensity(SupportKind.STIELTJES, max(1.0, mode), log_f,
                            f"generalized_gamma({d},{p},{a})"),
        classification=cls,
        classification_source=src,
        closed_form_log_abs_moment=cf,
        params=(d, p, a))


_FAMILIES: dict[str, tuple[Callable[..., CatalogEntry], tuple[float, ...]]] = {
    "normal": (_normal, (0.0, 1.0)),
    "half_normal": (_half_normal, (1.0,)),
    "exponential": (_exponential, (1.0,)),
    "gamma": (_gamma, (2.0, 1.0)),
    "lognormal": (_lognormal, (0.0, 1.0)),
    "chi_squared": (_chi_squared, (1.0,)),
    "weibull": (_weibull, (1.0, 1.0)),
    "generalized_gamma": (_generalized_gamma, (2.0, 1.0, 1.0)),
}


def catalog_density(name: str, params: list[float] | tuple[float, ...] = ()
                    ) -> CatalogEntry:
    """Build a catalog entry; missing parameters take standard defaults."""
    if name not in _FAMILIES:
        raise UnknownDistributionError(
            f"unknown distribution '{name}'; known: {sorted(_FAMILIES)}")
    builder, defaults = _FAMILIES[name]
    given = tuple(float(p) for p in params)
    if len(given) > len(defaults):
        raise InputError(
            f"'{name}' takes at most {len(defaults)} parameters, "
            f"got {len(given)}")
    full = given + defaults[len(given):]
    return builder(*full)


def catalog_names() -> list[str]:
    return sorted(_FAMILIES)


# fixtures used by the soundness/consistency sweeps and the CLI `catalog`
# subcommand; a representative spread over the parameter ranges
DEFAULT_FIXTURES: tuple[tuple[str, tuple[float, ...]], ...] = (
    ("normal", (0.0, 1.0)),
    ("half_normal", (1.0,)),
    ("exponential", (1.0,)),
    ("gamma", (0.5, 1.0)),
    ("gamma", (2.0, 1.0)),
    ("gamma", (5.0, 1.0)),
    ("lognormal", (0.0, 1.0)),
    ("lognormal", (0.5, 0.75)),
    ("chi_squared", (1.0,)),
    ("chi_squared", (4.0,)),
    ("weibull", (1.5, 1.0)),
    ("weibull", (0.5, 1.0)),
    ("weibull", (0.4, 1.0)),
    ("generalized_gamma", (2.0, 1.5, 1.0)),
    ("generalized_gamma", (1.0, 0.4, 1.0)),
)


def default_fixtures() -> list[CatalogEntry]:
    return [catalog_density(n, p) for n, p in DEFAULT_FIXTURES]
