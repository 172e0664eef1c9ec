"""Tail-ratio estimates: window sups, verdicts, invariances."""

import math

import numpy as np
import pytest

from mdet.densities import SupportKind, TailDensity, catalog_density
from mdet.errors import InputError
from mdet.phi import LOG_POW, custom_phi, make_phi
from mdet.tailratio import (FAILED, INCONCLUSIVE, SATISFIED, GridSpec,
                            gamma1, gamma2, gamma3)

PHI11 = make_phi(LOG_POW, 1.0, 1.0)


def laplace_density():
    def log_f(x):
        return -np.abs(np.asarray(x, dtype=float)) - math.log(2.0)

    return TailDensity(SupportKind.HAMBURGER, 1.0, log_f, "laplace")


def heavy_tail_density():
    c = math.log(8.0 / (3.0 * math.pi))

    def log_f(x):
        x = np.asarray(x, dtype=float)
        return c - 3.0 * np.log1p(x * x)

    return TailDensity(SupportKind.HAMBURGER, 1.0, log_f, "heavy")


def test_gamma1_normal_satisfied():
    est = gamma1(catalog_density("normal").density, PHI11)
    assert est.verdict == SATISFIED
    assert est.extrapolated <= 1e-6
    # analytic ratio at x=10: exp(-(10 log 10 + (log 10)^2 / 2))
    expected = math.exp(-(10.0 * math.log(10.0) + math.log(10.0) ** 2 / 2.0))
    sup_10_100 = dict(((lo, hi), s) for lo, hi, s in est.window_sups)[
        (10.0, 100.0)]
    assert sup_10_100 == pytest.approx(expected, rel=1e-9)
    assert expected == pytest.approx(7.0e-12, rel=1e-2)


def test_gamma1_constant_ratio_laplace():
    # phi = 1 shifts a log-linear tail by exactly one: ratio = e^-1 always
    phi = make_phi(LOG_POW, 1.0, 0.0)
    est = gamma1(laplace_density(), phi)
    assert est.verdict == SATISFIED
    for _, _, s in est.window_sups:
        assert s == pytest.approx(math.exp(-1.0), rel=1e-12)


def test_gamma1_heavy_tail_failed():
    est = gamma1(heavy_tail_density(), PHI11)
    assert est.verdict == FAILED
    sups = np.array([s for _, _, s in est.window_sups])
    assert np.all(sups[-5:] >= 0.975)


def test_gamma1_requires_full_line():
    with pytest.raises(InputError):
        gamma1(catalog_density("exponential").density, PHI11)
    with pytest.raises(InputError):
        gamma2(catalog_density("normal").density, PHI11)
    with pytest.raises(InputError):
        gamma3(catalog_density("normal").density, PHI11)


def test_gamma1_is_max_of_one_sided_quantities():
    # asymmetric two-sided density: rate 2 on the right, rate 1 on the left
    c = math.log(1.5)

    def log_f(x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0.0, -2.0 * x, x) - c

    d = TailDensity(SupportKind.HAMBURGER, 1.0, log_f, "skewed-laplace")
    phi = make_phi(LOG_POW, 1.0, 0.0)  # constant shift 1
    est = gamma1(d, phi)
    assert est.extrapolated_plus == pytest.approx(math.exp(-2.0), rel=1e-12)
    assert est.extrapolated_minus == pytest.approx(math.exp(-1.0), rel=1e-12)
    assert est.extrapolated == max(est.extrapolated_plus,
                                   est.extrapolated_minus)


def test_gamma2_chi_squared_satisfied():
    est = gamma2(catalog_density("chi_squared", (1.0,)).density, PHI11)
    assert est.verdict == SATISFIED
    assert est.side_condition_ok


def test_gamma2_exponential_ratio_value():
    # with phi = 1: ratio = exp(-((x+1)^2 - x^2)) = e^(-2x-1)
    phi = make_phi(LOG_POW, 1.0, 0.0)
    est = gamma2(catalog_density("exponential").density, phi)
    assert est.verdict == SATISFIED
    sup_10_100 = dict(((lo, hi), s) for lo, hi, s in est.window_sups)[
        (10.0, 100.0)]
    assert sup_10_100 == pytest.approx(math.exp(-21.0), rel=1e-9)


def test_gamma2_side_condition_forces_inconclusive():
    phi = custom_phi(lambda x: 0.5 * x, lambda x: np.full_like(x, 0.5),
                     1.0, "half-linear")
    est = gamma2(catalog_density("exponential").density, phi)
    assert not est.side_condition_ok
    assert est.verdict == INCONCLUSIVE


def test_gamma3_exponential_exact_window_sups():
    est = gamma3(catalog_density("exponential").density, PHI11)
    assert est.verdict == SATISFIED
    for lo, _, s in est.window_sups[1:]:  # skip the clipped lowest decade
        assert s * lo == pytest.approx(1.0, abs=1e-9)
    assert est.extrapolated == pytest.approx(1e-3, rel=1e-9)


def test_gamma3_lognormal_failed():
    est = gamma3(catalog_density("lognormal").density, PHI11)
    assert est.verdict == FAILED


def test_gamma3_half_normal_satisfied():
    est = gamma3(catalog_density("half_normal").density, PHI11)
    assert est.verdict == SATISFIED


def test_scale_invariance():
    base = catalog_density("lognormal").density
    offset = math.log(7.3)  # unnormalized kernel: density x 7.3

    def scaled_log_f(x):
        return base.log_f(x) + offset

    scaled = TailDensity(base.support, base.x0, scaled_log_f, "scaled")
    for fn in (gamma2, gamma3):
        a = fn(base, PHI11)
        b = fn(scaled, PHI11)
        assert a.verdict == b.verdict
        for (lo1, hi1, s1), (lo2, hi2, s2) in zip(a.window_sups,
                                                  b.window_sups):
            assert (lo1, hi1) == (lo2, hi2)
            assert s2 == pytest.approx(s1, rel=5e-13)


def test_grid_refinement_monotone_and_stable():
    d = catalog_density("lognormal").density
    coarse = gamma3(d, PHI11, GridSpec(points_per_decade=600))
    fine = gamma3(d, PHI11, GridSpec(points_per_decade=1200))
    for (l1, h1, s1), (l2, h2, s2) in zip(coarse.window_sups,
                                          fine.window_sups):
        assert (l1, h1) == (l2, h2)
        assert s2 >= s1 * (1.0 - 1e-12)  # sup over a (near-)superset
    assert abs(fine.extrapolated - coarse.extrapolated) < 1e-3


def test_window_layout():
    est = gamma3(catalog_density("exponential").density, PHI11,
                 GridSpec(x_end=1e6))
    bounds = [(lo, hi) for lo, hi, _ in est.window_sups]
    assert bounds[-1] == (1e5, 1e6)
    assert bounds[0] == (1.0, 10.0)
    assert len(bounds) == 6
