from fractions import Fraction as F

import pytest
from mpmath import mp, mpf

from bivasym import (
    BivariatePolynomial,
    OracleConfig,
    cauchy_quadrature,
    closed_form_table,
    coeff_linear_closed_form,
    coeff_recurrence,
)
from bivasym.errors import BranchTrackingError, ConfigError, SingularAtOrigin
from bivasym.oracle import quadrature_values, table_to_csv
from bivasym.series import Prefactor


def test_entry_1_1_is_three_quarters(multinomial_h):
    # Binomial oracle: [x y] (1 - (x+y))^(-1/2) comes from the n=2 term
    # C(-1/2,2) (x+y)^2, whose xy coefficient is 2 * 3/8 = 3/4.
    table = coeff_recurrence(multinomial_h, None, F(1, 2), (2, 2))
    assert table.series.coeffs[1][1] == F(3, 4)
    closed, pref = coeff_linear_closed_form(F(1), F(-1), F(-1), F(1, 2), 1, 1)
    assert closed == F(3, 4)
    assert pref.is_one()


def test_constant_h_table():
    table = coeff_recurrence(BivariatePolynomial.constant(2), None, F(1, 2), (2, 2))
    assert table.series.coeffs[0][0] == 1
    assert all(
        table.series.coeffs[r][s] == 0
        for r in range(3)
        for s in range(3)
        if (r, s) != (0, 0)
    )
    assert table.prefactor == Prefactor(F(2), F(-1, 2))


def test_singular_origin_rejected():
    H = BivariatePolynomial.from_items([(1, 0, "1")])
    with pytest.raises(SingularAtOrigin):
        coeff_recurrence(H, None, F(1, 2), (2, 2))
    with pytest.raises(SingularAtOrigin):
        coeff_linear_closed_form(F(0), F(1), F(1), F(1, 2), 1, 1)


def test_large_entry_matches_reported_value(multinomial_h):
    table = coeff_recurrence(multinomial_h, None, F(1, 2), (100, 100))
    value = table.value(100, 100)
    assert abs(value - mpf("3.61011e57")) < mpf("0.00001e57")
    closed, pref = coeff_linear_closed_form(F(1), F(-1), F(-1), F(1, 2), 100, 100)
    assert pref.is_one()
    assert closed == table.series.coeffs[100][100]


def test_cross_oracle_full_box(multinomial_h):
    box = (12, 12)
    rec = coeff_recurrence(multinomial_h, None, F(1, 2), box)
    cf = closed_form_table(multinomial_h, F(1, 2), box)
    assert rec.series == cf.series
    assert rec.prefactor == cf.prefactor


def test_fill_order_equivalence(multinomial_h, color_swap_h, color_swap_g):
    for H, G in ((multinomial_h, None), (color_swap_h, color_swap_g)):
        rows = coeff_recurrence(H, G, F(1, 2), (9, 7), order="rows")
        anti = coeff_recurrence(H, G, F(1, 2), (9, 7), order="antidiagonal")
        assert rows.series == anti.series


def test_negative_integer_beta_gives_polynomial(multinomial_h):
    table = coeff_recurrence(multinomial_h, None, F(-1), (4, 4))
    for (i, j), c in multinomial_h.terms.items():
        assert table.series.coeffs[i][j] == c
    assert table.series.coeffs[3][3] == 0


def test_numerator_multiplies_table(color_swap_h, color_swap_g):
    plain = coeff_recurrence(color_swap_h, None, F(1, 2), (6, 6))
    with_g = coeff_recurrence(color_swap_h, color_swap_g, F(1, 2), (6, 6))
    # Entry (1,0): [x] G*F = f10 - f00 (the -x term of G shifts by one).
    f = plain.series.coeffs
    assert with_g.series.coeffs[1][0] == f[1][0] - f[0][0]
    assert with_g.series.coeffs[0][0] == f[0][0]


def test_quadrature_simple_entry(multinomial_h):
    cfg = OracleConfig(
        box=(4, 4),
        beta=F(1, 2),
        quadrature_radii=(0.3, 0.3),
        quadrature_grid=(512, 512),
    )
    value, err = cauchy_quadrature(multinomial_h, None, F(1, 2), 1, 1, cfg)
    assert abs(value - F(3, 4)) < 1e-10
    assert err < 1e-10


def test_quadrature_constant_h():
    cfg = OracleConfig(
        box=(0, 0),
        beta=F(1, 2),
        quadrature_radii=(0.5, 0.5),
        quadrature_grid=(64, 64),
    )
    H = BivariatePolynomial.constant(4)
    value, _ = cauchy_quadrature(H, None, F(1, 2), 0, 0, cfg)
    assert abs(value - F(1, 2)) < 1e-10


def test_quadrature_cross_oracle_color_swap(color_swap_h, color_swap_g):
    cfg = OracleConfig(
        box=(10, 5),
        beta=F(1, 2),
        quadrature_radii=(0.2, 0.8),
        quadrature_grid=(512, 512),
    )
    value, err = cauchy_quadrature(color_swap_h, color_swap_g, F(1, 2), 10, 5, cfg)
    exact = coeff_recurrence(color_swap_h, color_swap_g, F(1, 2), (10, 5)).value(10, 5)
    assert abs(value - exact) / abs(exact) < 1e-8


def test_quadrature_branch_agrees_for_negative_constant_term():
    # Negative H(0,0): the series branch value is complex (-i here), and the
    # quadrature's radially-anchored branch must match the exact table's
    # symbolic prefactor.
    H = BivariatePolynomial.from_items([(0, 0, "-1"), (1, 0, "1"), (0, 1, "1")])
    tab = coeff_recurrence(H, None, F(1, 2), (5, 5))
    assert tab.prefactor == Prefactor(F(-1), F(-1, 2))
    assert abs(complex(tab.prefactor.value()) - (-1j)) < 1e-30
    cfg = OracleConfig(
        box=(5, 5), beta=F(1, 2), quadrature_radii=(0.3, 0.3), quadrature_grid=(256, 256)
    )
    quad = quadrature_values(H, None, F(1, 2), cfg)
    for r in range(6):
        for s in range(6):
            e = complex(tab.value(r, s))
            q = complex(quad.values[r, s])
            assert abs(q - e) <= 1e-10 * max(abs(e), 1e-30)


def test_quadrature_matches_irrational_prefactor_table():
    H = BivariatePolynomial.from_items([(0, 0, "2"), (1, 0, "-1"), (0, 1, "-1")])
    tab = coeff_recurrence(H, None, F(1, 2), (5, 5))
    assert tab.prefactor == Prefactor(F(2), F(-1, 2))
    cfg = OracleConfig(
        box=(5, 5), beta=F(1, 2), quadrature_radii=(0.5, 0.5), quadrature_grid=(256, 256)
    )
    quad = quadrature_values(H, None, F(1, 2), cfg)
    for r in range(6):
        for s in range(6):
            e = complex(tab.value(r, s))
            q = complex(quad.values[r, s])
            assert abs(q - e) <= 1e-10 * max(abs(e), 1e-30)


def test_quadrature_rejects_vanishing_torus():
    # 1 - 2x vanishes at x = 1/2, on the torus of radius 1/2.
    H = BivariatePolynomial.from_items([(0, 0, "1"), (1, 0, "-2")])
    cfg = OracleConfig(
        box=(2, 2),
        beta=F(1, 2),
        quadrature_radii=(0.5, 0.5),
        quadrature_grid=(64, 64),
    )
    with pytest.raises(BranchTrackingError):
        quadrature_values(H, None, F(1, 2), cfg)


def test_config_validation():
    with pytest.raises(ConfigError):
        OracleConfig(box=(2, 2), beta=F(1, 2), quadrature_radii=(0.3, 0.3), quadrature_grid=(48, 64))
    with pytest.raises(ConfigError):
        OracleConfig(box=(2, 2), beta=F(1, 2), quadrature_radii=(0.3, 0.3), quadrature_grid=(96, 64))
    with pytest.raises(ConfigError):
        OracleConfig(box=(2, 2), beta=F(1, 2), quadrature_radii=(-0.3, 0.3), quadrature_grid=(64, 64))
    with pytest.raises(ConfigError):
        OracleConfig(box=(40, 2), beta=F(1, 2), quadrature_radii=(0.3, 0.3), quadrature_grid=(64, 64))


def test_csv_export_exact(multinomial_h):
    table = coeff_recurrence(multinomial_h, None, F(1, 2), (1, 1))
    text = table_to_csv(table)
    lines = text.split("\n")
    assert lines[0] == "# prefactor: 1"
    assert lines[1] == "r,s,numerator,denominator,value"
    assert lines[2].startswith("0,0,1,1,")
    assert text.endswith("\n")
    assert "\r" not in text


def test_csv_export_quadrature(multinomial_h):
    cfg = OracleConfig(
        box=(1, 1),
        beta=F(1, 2),
        quadrature_radii=(0.3, 0.3),
        quadrature_grid=(64, 64),
    )
    table = quadrature_values(multinomial_h, None, F(1, 2), cfg)
    text = table_to_csv(table)
    assert text.splitlines()[0] == "r,s,real,imag,error"
    assert len(text.splitlines()) == 5
