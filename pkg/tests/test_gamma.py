import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bivasym import gamma_log, gamma_real
from bivasym.errors import GammaPole


def test_half_integer_values():
    assert abs(gamma_real(0.5) - math.sqrt(math.pi)) < 1e-12 * math.sqrt(math.pi)
    assert abs(gamma_real(1.0) - 1.0) < 1e-12
    assert abs(gamma_real(1.5) - math.sqrt(math.pi) / 2) < 1e-12


def test_poles_raise():
    for b in (0, -1, -2, -17.0):
        with pytest.raises(GammaPole):
            gamma_real(b)
        with pytest.raises(GammaPole):
            gamma_log(b)


@given(st.floats(min_value=-20, max_value=30, allow_subnormal=False))
@settings(max_examples=200)
def test_matches_libm(b):
    # math.gamma is an independent oracle for the Lanczos implementation.
    if b <= 0 and float(b) == int(b):
        return
    try:
        expected = math.gamma(b)
    except (OverflowError, ValueError):
        return
    got = gamma_real(b)
    assert abs(got - expected) <= 1e-12 * abs(expected)


@given(st.floats(min_value=-50, max_value=200, allow_subnormal=False))
@settings(max_examples=200)
def test_log_form_matches_lgamma(b):
    if b <= 0 and float(b) == int(b):
        return
    sign, ln = gamma_log(b)
    assert abs(ln - math.lgamma(b)) <= 1e-11 * max(1.0, abs(math.lgamma(b)))
    if b > 0:
        assert sign == 1


@given(st.floats(min_value=0.1, max_value=50))
@settings(max_examples=100)
def test_functional_equation(b):
    # Gamma(b+1) = b * Gamma(b)
    assert abs(gamma_real(b + 1) - b * gamma_real(b)) <= 1e-11 * abs(gamma_real(b + 1))


def test_negative_region_signs():
    assert gamma_real(-0.5) < 0
    assert gamma_real(-1.5) > 0
    assert gamma_log(-0.5)[0] == -1
    assert gamma_log(-1.5)[0] == 1
