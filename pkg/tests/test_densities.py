"""Catalog correctness: closed forms, mass, tail positivity, fixtures."""

import math

import numpy as np
import pytest

from mdet.densities import (Classification, SupportKind, TailDensity,
                            catalog_density, catalog_names, default_fixtures,
                            evaluate_log_density)
from mdet.errors import InputError, UnknownDistributionError
from mdet.moments import log_mass


def test_lognormal_log_density_at_one():
    # log 1 = 0 makes the exponent vanish: f(1) = 1/(sigma sqrt(2 pi))
    e = catalog_density("lognormal", (0.0, 1.0))
    assert evaluate_log_density(e.density, 1.0) == pytest.approx(
        -0.5 * math.log(2.0 * math.pi), abs=1e-15)


def test_normal_density_at_two_against_mpmath():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 50
    expected = mp.exp(-mp.mpf(2) ** 2 / 2) / mp.sqrt(2 * mp.pi)
    e = catalog_density("normal", (0.0, 1.0))
    got = math.exp(evaluate_log_density(e.density, 2.0))
    assert got == pytest.approx(float(expected), rel=1e-14)
    assert got == pytest.approx(0.0539910, rel=1e-5)


def test_exponential_density_value():
    e = catalog_density("exponential", (1.0,))
    assert math.exp(evaluate_log_density(e.density, 0.5)) == pytest.approx(
        math.exp(-0.5), rel=1e-15)
    assert evaluate_log_density(e.density, 3.0) == pytest.approx(-3.0)


def test_chi_squared_log_density():
    e = catalog_density("chi_squared", (1.0,))
    expected = -0.5 - 0.5 * math.log(2.0 * math.pi)
    assert evaluate_log_density(e.density, 1.0) == pytest.approx(
        expected, abs=1e-14)
    assert expected == pytest.approx(-1.418939, abs=1e-6)


def test_stieltjes_rejects_negative_argument():
    e = catalog_density("exponential")
    with pytest.raises(InputError):
        evaluate_log_density(e.density, -1.0)


def test_unknown_name_and_bad_params():
    with pytest.raises(UnknownDistributionError):
        catalog_density("cauchy")
    with pytest.raises(InputError):
        catalog_density("exponential", (-1.0,))
    with pytest.raises(InputError):
        catalog_density("gamma", (0.0, 1.0))
    with pytest.raises(InputError):
        catalog_density("normal", (0.0, 1.0, 2.0))


def test_default_params():
    e = catalog_density("normal")
    assert e.params == (0.0, 1.0)
    e = catalog_density("gamma", (3.0,))
    assert e.params == (3.0, 1.0)


@pytest.mark.parametrize("entry", default_fixtures(),
                         ids=lambda e: e.density.label)
def test_catalog_mass_is_one(entry):
    assert abs(log_mass(entry.density)) <= 1e-8


@pytest.mark.parametrize("entry", default_fixtures(),
                         ids=lambda e: e.density.label)
def test_tail_positivity_on_dense_grid(entry):
    d = entry.density
    xs = np.geomspace(d.x0, d.x0 * 1e8, 1000)
    vals = d.log_f(xs)
    assert np.all(np.isfinite(vals))
    if d.support is SupportKind.HAMBURGER:
        assert np.all(np.isfinite(d.log_f(-xs)))


def test_classification_fixtures():
    assert catalog_density("normal").classification is Classification.MDET
    assert catalog_density("exponential").classification is Classification.MDET
    assert catalog_density("half_normal").classification is Classification.MDET
    for shape in (0.5, 1.0, 3.0):
        assert (catalog_density("gamma", (shape, 1.0)).classification
                is Classification.MDET)
    assert catalog_density("lognormal").classification is Classification.MINDET
    for entry in default_fixtures():
        assert entry.classification_source.strip()


def test_zero_tail_density_rejected_at_construction():
    def log_f(x):
        x = np.asarray(x, dtype=float)
        return np.where(np.abs(x) > 5.0, -math.inf, -np.abs(x))

    with pytest.raises(InputError):
        TailDensity(SupportKind.HAMBURGER, 1.0, log_f, "truncated")


def test_closed_forms_agree_with_quadrature_spot():
    from mdet.moments import Side, log_abs_moment
    for name, params, n in [("weibull", (1.5, 1.0), 7),
                            ("generalized_gamma", (2.0, 1.5, 1.0), 9),
                            ("chi_squared", (4.0,), 11),
                            ("half_normal", (1.0,), 6)]:
        e = catalog_density(name, params)
        q = log_abs_moment(e.density, n, Side.PLUS)
        assert q == pytest.approx(e.closed_form_log_abs_moment(n), abs=1e-8)


def test_catalog_names_listing():
    names = catalog_names()
    assert "normal" in names and "generalized_gamma" in names
    assert len(names) == 8
