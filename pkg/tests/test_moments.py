"""Moment engine: quadrature vs closed forms, table invariants, existence."""

import math

import numpy as np
import pytest

from mdet.densities import (SupportKind, TailDensity, catalog_density,
                            default_fixtures)
from mdet.errors import DivergentMomentError, InputError
from mdet.moments import Side, log_abs_moment, log_mass, moment_table


def heavy_tail_density():
    # f(x) = (8 / (3 pi)) (1 + x^2)^-3: moments exist only up to order 4
    c = math.log(8.0 / (3.0 * math.pi))

    def log_f(x):
        x = np.asarray(x, dtype=float)
        return c - 3.0 * np.log1p(x * x)

    return TailDensity(SupportKind.HAMBURGER, 1.0, log_f, "heavy(1+x^2)^-3")


def test_factorial_moment():
    e = catalog_density("exponential")
    assert log_abs_moment(e.density, 5) == pytest.approx(math.log(120.0),
                                                         abs=1e-9)
    assert math.log(120.0) == pytest.approx(4.78749, abs=1e-5)


def test_normal_half_fourth_moment():
    e = catalog_density("normal")
    got = log_abs_moment(e.density, 4, Side.PLUS)
    assert got == pytest.approx(math.log(1.5), abs=1e-9)  # half of m4 = 3


def test_lognormal_sixth_moment():
    e = catalog_density("lognormal")
    assert log_abs_moment(e.density, 6) == pytest.approx(18.0, abs=1e-8)


def test_moment_table_normal_even():
    t = moment_table(catalog_density("normal"), 6)
    expected = [math.log(1.0), math.log(3.0), math.log(15.0)]
    assert np.allclose(t.log_m_even, expected, atol=1e-9)
    # symmetric: one-sided moments agree elementwise
    assert np.array_equal(t.log_mu_plus, t.log_mu_minus)


def test_moment_table_exponential():
    t = moment_table(catalog_density("exponential"), 4)
    expected = [0.0, math.log(2.0), math.log(6.0), math.log(24.0)]
    assert np.allclose(t.log_mu, expected, atol=1e-9)
    assert np.all(t.log_mu_minus == -math.inf)
    assert np.array_equal(t.log_mu, t.log_mu_plus)


def test_logsumexp_consistency_plus_minus():
    t = moment_table(catalog_density("normal"), 8)
    combined = np.logaddexp(t.log_mu_plus, t.log_mu_minus)
    assert np.allclose(combined, t.log_mu, atol=1e-12)


@pytest.mark.parametrize("entry", default_fixtures(),
                         ids=lambda e: e.density.label)
def test_quadrature_vs_closed_form_to_thirty(entry):
    d = entry.density
    cf = entry.closed_form_log_abs_moment
    assert cf is not None
    for n in (1, 2, 3, 5, 9, 17, 30):
        if d.support is SupportKind.STIELTJES:
            q = log_abs_moment(d, n, Side.PLUS)
        else:
            q = float(np.logaddexp(log_abs_moment(d, n, Side.PLUS),
                                   log_abs_moment(d, n, Side.MINUS)))
        assert abs(q - cf(n)) <= 1e-6, f"n={n}"


def test_lyapunov_convexity_pure_quadrature():
    # no closed form involved: table built straight from the density
    d = catalog_density("weibull", (1.5, 1.0)).density
    t = moment_table(d, 20)
    full = np.concatenate(([0.0], t.log_mu))
    defect = full[:-2] + full[2:] - 2.0 * full[1:-1]
    assert float(np.min(defect)) >= -1e-9


def test_node_budget_doubling_stability():
    d = catalog_density("lognormal").density
    for n in (4, 17, 40):
        a = log_abs_moment(d, n, Side.PLUS, max_level=7, early_stop=False)
        b = log_abs_moment(d, n, Side.PLUS, max_level=8, early_stop=False)
        assert abs(a - b) < 1e-8


def test_divergent_moment_detected():
    d = heavy_tail_density()
    with pytest.raises(DivergentMomentError) as err:
        log_abs_moment(d, 10)
    assert err.value.order == 10
    assert "order 10" in str(err.value)


def test_moment_table_aborts_with_offending_order():
    d = heavy_tail_density()
    with pytest.raises(DivergentMomentError) as err:
        moment_table(d, 10)
    assert err.value.order >= 5  # moments up to 4 exist


def test_low_heavy_tail_moment_exists():
    # order-2 moment of the (1+x^2)^-3 density: 2 * int x^2 f = 1/3 by the
    # beta-integral identity; both half-lines are equal by symmetry
    d = heavy_tail_density()
    got = np.logaddexp(log_abs_moment(d, 2, Side.PLUS),
                       log_abs_moment(d, 2, Side.MINUS))
    assert float(got) == pytest.approx(math.log(1.0 / 3.0), abs=1e-9)


def test_minus_side_of_stieltjes_is_zero_mass():
    d = catalog_density("exponential").density
    assert log_abs_moment(d, 3, Side.MINUS) == -math.inf


def test_invalid_orders():
    d = catalog_density("exponential").density
    with pytest.raises(InputError):
        log_abs_moment(d, -1)
    with pytest.raises(InputError):
        moment_table(catalog_density("exponential"), 1)


def test_mass_of_heavy_tail():
    assert abs(log_mass(heavy_tail_density())) <= 1e-9
