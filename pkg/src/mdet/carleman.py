"""Carleman partial sums and a divergence diagnosis.

Hamburger condition: sum over n of m_2n^(-1/(2n)) = inf;
Stieltjes condition: sum over n of m_n^(-1/(2n)) = inf.

Divergence of a series can never be concluded from finitely many terms, so
the diagnosis is a fitted-growth heuristic with explicit thresholds and is
labelled "diagnostic" in reports, never "proof":

DIVERGENT    the fitted power-law exponent p (log t_n ~ -p log n + c over
             the upper half of available orders) is <= 1 - delta_fit, or
             n * t_n is bounded below and non-decreasing there (harmonic
             boundary case, e.g. Weibull shape 1/2);
CONVERGENT   terms decay at least geometrically: log t_n / n <= -delta_geo
             throughout the fit window;
INCONCLUSIVE everything else.

The lower-bound series of the determinacy proof machinery are also
provided: sum d0^(-1/(2n)) c^(-1/2) (n log n)^(-1/2) (which grows like
sqrt(n/log n)) and sum d0^(-1/(2n)) c^(-1) (2n log 2n)^(-1) (which grows
like (1/2) log log n -- unbounded, but glacially).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .densities import SupportKind
from .errors import InputError
from .moments import MomentTable

DIVERGENT = "DIVERGENT"
CONVERGENT = "CONVERGENT"
INCONCLUSIVE = "INCONCLUSIVE"

DELTA_FIT = 0.05
DELTA_GEO = 0.05
_HARMONIC_FLOOR = 0.1


@dataclass(frozen=True)
class CarlemanDiagnosis:
    kind: SupportKind
    terms: np.ndarray
    partial_sums: np.ndarray
    growth_exponent: float  # fitted p in log t_n ~ -p log n + c
    diagnosis: str
    fit_start: int  # 1-based first order used in the fit


def carleman_terms(table: MomentTable, kind: SupportKind
                   ) -> CarlemanDiagnosis:
    """Terms and partial sums of the Carleman series for `kind`.

    STIELTJES uses the absolute moments mu_n (valid on a Hamburger table
    too: that is the series for |X|); HAMBURGER uses the even raw moments
    m_2n and requires a full-line table.
    """
    if kind is SupportKind.HAMBURGER:
        if table.support is not SupportKind.HAMBURGER:
            raise InputError(
                "Hamburger series on a half-line table: symmetrize first")
        log_m = table.log_m_even
    else:
        log_m = table.log_mu
    n = np.arange(1, log_m.size + 1, dtype=float)
    log_terms = -log_m / (2.0 * n)
    terms = np.exp(log_terms)
    if np.any(terms <= 0.0) or np.any(~np.isfinite(terms)):
        raise InputError("Carleman terms must be positive and finite")

    start = max(log_terms.size // 2, 1)
    w = slice(start, None)
    slope, _ = np.polyfit(np.log(n[w]), log_terms[w], 1)
    p = -float(slope)

    harmonic = (float(np.min(n[w] * terms[w])) >= _HARMONIC_FLOOR
                and _non_decreasing(n[w] * terms[w]))
    if p <= 1.0 - DELTA_FIT or harmonic:
        diagnosis = DIVERGENT
    elif float(np.max(log_terms[w] / n[w])) <= -DELTA_GEO:
        diagnosis = CONVERGENT
    else:
        diagnosis = INCONCLUSIVE

    return CarlemanDiagnosis(kind=kind, terms=terms,
                             partial_sums=np.cumsum(terms),
                             growth_exponent=p, diagnosis=diagnosis,
                             fit_start=start + 1)


def _non_decreasing(vals: np.ndarray) -> bool:
    return bool(np.all(vals[1:] >= vals[:-1] * (1.0 - 1e-9)))


def bound_implies_divergence(d0: float, c: float, n_terms: int
                             ) -> tuple[np.ndarray, np.ndarray]:
    """Partial sums of the two lower-bound series implied by the moment
    bound mu_n <= d0 c^n (n log n)^n.

    Returns (sums_sqrt, sums_loglog): the first over n = 2..n_terms of
    d0^(-1/(2n)) c^(-1/2) (n log n)^(-1/2), the second over n = 1..n_terms
    of d0^(-1/(2n)) c^(-1) (2n log 2n)^(-1).  Both are unbounded in
    n_terms.
    """
    if not (d0 > 0.0 and c > 0.0):
        raise InputError("d0 and c must be positive")
    if n_terms < 2:
        raise InputError("need n_terms >= 2")
    log_d0 = math.log(d0)

    n = np.arange(2, n_terms + 1, dtype=float)
    t_sqrt = np.exp(-log_d0 / (2.0 * n) - 0.5 * math.log(c)
                    - 0.5 * np.log(n * np.log(n)))

    m = np.arange(1, n_terms + 1, dtype=float)
    t_loglog = np.exp(-log_d0 / (2.0 * m) - math.log(c)
                      - np.log(2.0 * m * np.log(2.0 * m)))

    return np.cumsum(t_sqrt), np.cumsum(t_loglog)
