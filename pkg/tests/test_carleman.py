"""Carleman terms, divergence diagnosis, lower-bound series."""

import math

import numpy as np
import pytest

from mdet.carleman import (CONVERGENT, DIVERGENT, bound_implies_divergence,
                           carleman_terms)
from mdet.densities import SupportKind, catalog_density
from mdet.errors import InputError
from mdet.moments import moment_table


def test_normal_hamburger_terms():
    t = moment_table(catalog_density("normal"), 6)
    diag = carleman_terms(t, SupportKind.HAMBURGER)
    expected = [1.0, 3.0 ** -0.25, 15.0 ** (-1.0 / 6.0)]
    assert np.allclose(diag.terms, expected, rtol=1e-12)
    assert np.allclose(diag.partial_sums, np.cumsum(expected), rtol=1e-12)
    assert expected[1] == pytest.approx(0.759836, abs=1e-6)
    assert expected[2] == pytest.approx(0.636773, abs=1e-6)


def test_lognormal_geometric_convergent():
    t = moment_table(catalog_density("lognormal"), 40)
    diag = carleman_terms(t, SupportKind.STIELTJES)
    n = np.arange(1, 41)
    assert np.allclose(diag.terms, np.exp(-n / 4.0), rtol=1e-9)
    assert diag.terms[0] == pytest.approx(0.77880, abs=1e-5)
    assert diag.diagnosis == CONVERGENT


def test_exponential_diverges_with_half_exponent():
    t = moment_table(catalog_density("exponential"), 40)
    diag = carleman_terms(t, SupportKind.STIELTJES)
    assert diag.diagnosis == DIVERGENT
    assert abs(diag.growth_exponent - 0.5) <= 0.1
    # Stirling: (n!)^(1/2n) ~ sqrt(n/e)
    n = 40
    stirling = math.exp(-math.lgamma(n + 1) / (2 * n))
    assert diag.terms[-1] == pytest.approx(stirling, rel=1e-9)


def test_normal_hamburger_diverges():
    t = moment_table(catalog_density("normal"), 40)
    diag = carleman_terms(t, SupportKind.HAMBURGER)
    assert diag.diagnosis == DIVERGENT
    assert abs(diag.growth_exponent - 0.5) <= 0.1


def test_weibull_half_is_harmonic_divergent():
    # m_n = Gamma(1 + 2n): terms ~ e/(2n) decay like 1/n: the power-law fit
    # sits at p ~ 1 and the harmonic lower-bound route must catch it
    t = moment_table(catalog_density("weibull", (0.5, 1.0)), 40)
    diag = carleman_terms(t, SupportKind.STIELTJES)
    assert diag.diagnosis == DIVERGENT
    assert diag.growth_exponent > 0.9


def test_hamburger_kind_on_stieltjes_table_rejected():
    t = moment_table(catalog_density("exponential"), 6)
    with pytest.raises(InputError):
        carleman_terms(t, SupportKind.HAMBURGER)


def test_stieltjes_kind_on_hamburger_table_is_abs_x_series():
    t = moment_table(catalog_density("normal"), 10)
    diag = carleman_terms(t, SupportKind.STIELTJES)
    assert diag.terms.size == 10
    assert diag.diagnosis == DIVERGENT


def test_partial_sums_strictly_increasing():
    t = moment_table(catalog_density("lognormal"), 30)
    diag = carleman_terms(t, SupportKind.STIELTJES)
    assert np.all(np.diff(diag.partial_sums) > 0.0)


def test_bound_series_values():
    s13, s14 = bound_implies_divergence(1.0, 1.0, 10)
    # direct-summation oracle
    oracle13 = sum((n * math.log(n)) ** -0.5 for n in range(2, 11))
    assert s13[-1] == pytest.approx(oracle13, rel=1e-12)
    assert oracle13 == pytest.approx(3.4317, abs=2e-4)
    assert s14[0] == pytest.approx(1.0 / (2.0 * math.log(2.0)), rel=1e-12)
    assert s14[0] == pytest.approx(0.72135, abs=1e-5)


def test_bound_series_monotone_any_constants():
    for d0, c in [(0.3, 2.0), (10.0, 0.1), (1.0, 1.0)]:
        s13, s14 = bound_implies_divergence(d0, c, 200)
        assert np.all(np.diff(s13) > 0.0)
        assert np.all(np.diff(s14) > 0.0)


def test_bound_series_growth_at_desk_scale():
    s13, s14 = bound_implies_divergence(1.0, 1.0, 10 ** 6)
    gain13 = s13[-1] - s13[10 ** 3 - 2]
    assert gain13 > 10.0
    # the loglog series gains ~ (1/2) d(log log N): slow but real growth
    gain14 = s14[-1] - s14[10 ** 3 - 1]
    analytic = 0.5 * (math.log(math.log(2e6)) - math.log(math.log(2e3)))
    assert gain14 > 0.3
    assert gain14 == pytest.approx(analytic, rel=0.05)


def test_moment_bound_implies_gentle_exponent():
    # a table satisfying log mu_n <= log d0 + n log c + n log(n log n)
    # elementwise (n >= 2) must fit with p <= 1
    t = moment_table(catalog_density("exponential"), 40)
    c, b = 9.1, 12.1  # recursion constants scale for this density
    d0_log = float(np.logaddexp(t.log_mu[0] - math.log(c), b / c))
    n = np.arange(2, 41, dtype=float)
    bound = d0_log + n * math.log(c) + n * np.log(n * np.log(n))
    assert np.all(t.log_mu[1:] <= bound)
    diag = carleman_terms(t, SupportKind.STIELTJES)
    assert diag.growth_exponent <= 1.0


def test_bound_series_input_validation():
    with pytest.raises(InputError):
        bound_implies_divergence(0.0, 1.0, 10)
    with pytest.raises(InputError):
        bound_implies_divergence(1.0, 1.0, 1)


def test_satisfied_gamma_implies_divergent_diagnosis():
    # the tail conditions imply the Carleman condition: whenever the ratio
    # verdict certifies a catalog density, this module must corroborate
    from mdet.densities import default_fixtures
    from mdet.phi import LOG_POW, make_phi
    from mdet.tailratio import SATISFIED, gamma1, gamma3

    phi = make_phi(LOG_POW, 1.0, 1.0)
    corroborated = 0
    for entry in default_fixtures():
        d = entry.density
        est = (gamma1 if d.support is SupportKind.HAMBURGER else gamma3)(
            d, phi)
        if est.verdict != SATISFIED:
            continue
        table = moment_table(entry, 40)
        kind = (SupportKind.HAMBURGER if d.support is SupportKind.HAMBURGER
                else SupportKind.STIELTJES)
        assert carleman_terms(table, kind).diagnosis == DIVERGENT, d.label
        corroborated += 1
    assert corroborated >= 8
