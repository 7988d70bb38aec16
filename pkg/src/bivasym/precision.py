"""Global floating-precision configuration.

All floating computation in the package runs on mpmath's global context.
The precision (in bits of significand) is a single package-wide setting so
that every tolerance downstream is stated against one precision.  Default
is a 128-bit significand.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction

from mpmath import mp, mpc, mpf

from .errors import EvaluationOverflow

DEFAULT_PRECISION = 128

mp.prec = DEFAULT_PRECISION


def set_precision(bits: int) -> None:
    """Set the significand width, in bits, for all floating work."""
    if bits < 24:
        raise ValueError(f"precision too low: {bits} bits")
    mp.prec = bits


def get_precision() -> int:
    return mp.prec


@contextmanager
def working_precision(bits: int):
    """Temporarily switch the global precision."""
    old = mp.prec
    set_precision(bits)
    try:
        yield
    finally:
        mp.prec = old


def to_mpf(x) -> mpf:
    """Convert an int/Fraction/float/mpf to an mpf at current precision."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / mpf(x.denominator)
    return mpf(x)


def to_mpc(x) -> mpc:
    """Convert a real or complex scalar to an mpc at current precision."""
    if isinstance(x, Fraction):
        return mpc(to_mpf(x))
    if isinstance(x, complex):
        return mpc(x.real, x.imag)
    return mpc(x)


def is_finite(z) -> bool:
    z = mpc(z)
    return bool(mp.isfinite(z.real) and mp.isfinite(z.imag))


def require_finite(z, what: str = "evaluation"):
    """Raise EvaluationOverflow if ``z`` is not finite."""
    if not is_finite(z):
        raise EvaluationOverflow(f"{what} overflow")
    return z


def eps() -> mpf:
    """Unit roundoff at the current precision."""
    return mpf(2) ** (-mp.prec)
