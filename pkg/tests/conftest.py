"""Shared inputs: the two worked generating functions and a winding synthetic."""

from fractions import Fraction as F

import pytest

from bivasym import BivariatePolynomial, Direction


@pytest.fixture
def multinomial_h() -> BivariatePolynomial:
    """H = 1 - x - y, the square-root multinomial denominator."""
    return BivariatePolynomial.from_items([(0, 0, "1"), (1, 0, "-1"), (0, 1, "-1")])


@pytest.fixture
def color_swap_h() -> BivariatePolynomial:
    """H = 1 - 2x(1+y) - x^2(1-y)^2, the color-swap stationary denominator."""
    return BivariatePolynomial.from_items(
        [(0, 0, "1"), (1, 0, "-2"), (1, 1, "-2"), (2, 0, "-1"), (2, 1, "2"), (2, 2, "-1")]
    )


@pytest.fixture
def color_swap_g() -> BivariatePolynomial:
    """G = 1 - x(1+y), the matching numerator."""
    return BivariatePolynomial.from_items([(0, 0, "1"), (1, 0, "-1"), (1, 1, "-1")])


@pytest.fixture
def diag_direction() -> Direction:
    return Direction(1, 1)


@pytest.fixture
def color_swap_direction() -> Direction:
    return Direction(2, 1)


# Phase-winding synthetic: (1 - x - y) * W with W designed so that along
# t -> (t*p, t*q), p = 1/2 + i/4, q = 1/2 - i/4 (so the first factor is the
# positive real 1 - t), the factor W winds once around the origin while
# staying bounded away from it.
WINDING_W_TERMS = {
    (0, 0): F(746557, 6413459),
    (1, 0): F(-957689, 8992098),
    (0, 1): F(-12951865, 9933346),
    (2, 0): F(9772541, 9939450),
    (0, 2): F(26089429, 5020139),
    (3, 0): F(-42588829, 7401324),
    (0, 3): F(-106775833, 9941924),
}

WINDING_POINT = (0.5 + 0.25j, 0.5 - 0.25j)


@pytest.fixture
def winding_synthetic():
    base = BivariatePolynomial.from_items([(0, 0, "1"), (1, 0, "-1"), (0, 1, "-1")])
    w = BivariatePolynomial(dict(WINDING_W_TERMS))
    return base * w
