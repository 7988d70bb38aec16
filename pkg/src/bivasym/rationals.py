"""Helpers for exact rational values: parsing, formatting, binomials, roots.

Rationals are plain ``fractions.Fraction`` everywhere in the package:
always in lowest terms with a positive denominator, which matches the
invariants we need without a wrapper type.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

# Unicode minus shows up in hand-written coefficient strings.
_MINUS = "−"


def parse_rational(text) -> Fraction:
    """Parse "num/den", integer, or decimal strings into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise ValueError(
            f"refusing float coefficient {text!r}; pass a string like '1/3'"
        )
    s = str(text).strip().replace(_MINUS, "-").replace(" ", "")
    return Fraction(s)


def format_rational(q: Fraction) -> str:
    """Canonical "num/den" form; bare integer when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def binomial_general(alpha: Fraction, n: int) -> Fraction:
    """Generalized binomial coefficient C(alpha, n) for rational alpha."""
    if n < 0:
        return Fraction(0)
    num = Fraction(1)
    for k in range(n):
        num *= alpha - k
    den = 1
    for k in range(2, n + 1):
        den *= k
    return num / den


def integer_nth_root(n: int, k: int) -> Optional[int]:
    """Exact k-th root of a nonnegative integer, or None if not a k-th power."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0, k >= 1")
    if n in (0, 1) or k == 1:
        return n
    # Newton iteration on integers; start from a float estimate.
    r = max(1, int(round(n ** (1.0 / k))))
    while True:
        rk = r**k
        if rk == n:
            return r
        nxt = ((k - 1) * r + n // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    for cand in (r - 1, r, r + 1, r + 2):
        if cand >= 1 and cand**k == n:
            return cand
    return None


def rational_power(base: Fraction, expo: Fraction) -> Optional[Fraction]:
    """base**expo as an exact Fraction when that value is rational, else None.

    Only positive bases are attempted for non-integer exponents (negative
    bases give complex values, integer-exponent cases are always rational).
    """
    base = Fraction(base)
    expo = Fraction(expo)
    if base == 0:
        if expo > 0:
            return Fraction(0)
        raise ZeroDivisionError("0 raised to a nonpositive power")
    if expo.denominator == 1:
        return base ** int(expo)
    if base < 0:
        return None
    u, v = expo.numerator, expo.denominator
    a, b = base.numerator, base.denominator
    ra = integer_nth_root(a, v)
    rb = integer_nth_root(b, v)
    if ra is None or rb is None:
        return None
    return Fraction(ra, rb) ** u
