"""Simultaneous (Aberth–Ehrlich) polynomial root finding in high precision.

Roots are iterated all at once from perturbed-circle starting points; a
reduced-precision pass gets near the roots cheaply and the ambient
precision pass finishes.  Everything is deterministic: fixed starting
angles, fixed iteration caps, no randomness.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from mpmath import mp, mpc, mpf

from .errors import RootFindingError
from .precision import to_mpc, working_precision

# Fixed angular offset for the starting circle, breaking root symmetries.
_START_OFFSET = 0.376991118430775

_STAGE_PREC = 64


def _poly_and_deriv(coeffs: Sequence[mpc], z: mpc):
    """Evaluate p(z) and p'(z) by one Horner pass."""
    p = coeffs[-1]
    dp = mpc(0)
    for c in reversed(coeffs[:-1]):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _magnitude_scale(coeffs: Sequence[mpc], z: mpc) -> mpf:
    az = abs(z)
    total = mpf(0)
    power = mpf(1)
    for c in coeffs:
        total += abs(c) * power
        power *= az
    return total


def _trim_leading(coeffs: List[mpc]) -> List[mpc]:
    biggest = max((abs(c) for c in coeffs), default=mpf(0))
    if biggest == 0:
        return [mpc(0)]
    floor = biggest * mpf(2) ** (-(mp.prec - 8))
    out = list(coeffs)
    while len(out) > 1 and abs(out[-1]) <= floor:
        out.pop()
    return out


def _aberth_iterate(coeffs: List[mpc], z: List[mpc], max_iter: int, tol: mpf) -> List[mpc]:
    n = len(z)
    for _ in range(max_iter):
        converged = True
        for i in range(n):
            zi = z[i]
            p, dp = _poly_and_deriv(coeffs, zi)
            if p == 0:
                continue
            if dp == 0:
                # Nudge off an exact critical point; deterministic direction.
                zi = zi + (abs(zi) + 1) * mpf(2) ** (-mp.prec // 2)
                p, dp = _poly_and_deriv(coeffs, zi)
                if dp == 0:
                    continue
            w = p / dp
            s = mpc(0)
            for j in range(n):
                if j != i:
                    d = zi - z[j]
                    if d == 0:
                        d = (abs(zi) + 1) * mpf(2) ** (-mp.prec + 4)
                    s += 1 / d
            denom = 1 - w * s
            if denom == 0:
                delta = w
            else:
                delta = w / denom
            z[i] = zi - delta
            if abs(delta) > tol * (1 + abs(z[i])):
                converged = False
        if converged:
            break
    return z


def aberth_roots(
    coefficients: Sequence, max_iter: int = 160, residual_bits: int = 24
) -> List[mpc]:
    """All complex roots (with multiplicity) of an ascending-coefficient poly.

    Coefficients may be Fractions, ints, floats, or complex; they are taken
    exactly into the working precision.  Raises RootFindingError (carrying
    partial results) when a residual check fails after the iteration cap.
    """
    coeffs = [to_mpc(c) for c in coefficients]
    coeffs = _trim_leading(coeffs)
    # Factor out roots at the origin exactly.
    zero_roots = 0
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs.pop(0)
        zero_roots += 1
    n = len(coeffs) - 1
    roots: List[mpc] = [mpc(0)] * zero_roots
    if n == 0:
        return roots
    if n == 1:
        roots.append(-coeffs[0] / coeffs[1])
        return roots
    if n == 2:
        roots.extend(_quadratic(coeffs))
        return roots

    lead = coeffs[-1]
    radius = 1 + max(abs(c / lead) for c in coeffs[:-1])
    start = [
        radius * mp.exp(mpc(0, 2 * mp.pi * k / n + _START_OFFSET))
        for k in range(n)
    ]

    # Stage 1: cheap pass at reduced precision.
    with working_precision(_STAGE_PREC):
        lo = [mpc(c) for c in coeffs]
        z = _aberth_iterate(lo, [mpc(s) for s in start], max_iter, mpf(2) ** (-40))
    # Stage 2: finish at ambient precision.
    z = [mpc(v) for v in z]
    tol = mpf(2) ** (-(mp.prec - 12))
    z = _aberth_iterate(coeffs, z, max_iter, tol)

    # Residual acceptance: |p(z)| relative to the coefficient scale at z.
    loose = mpf(2) ** (-residual_bits)
    bad = []
    for zi in z:
        p, _ = _poly_and_deriv(coeffs, zi)
        if abs(p) > loose * _magnitude_scale(coeffs, zi):
            bad.append(zi)
    if bad:
        raise RootFindingError(
            f"root iteration failed to converge for {len(bad)} of {n} roots",
            partial=roots + z,
        )
    roots.extend(z)
    return roots


def _quadratic(coeffs: Sequence[mpc]) -> List[mpc]:
    c, b, a = coeffs[0], coeffs[1], coeffs[2]
    disc = mp.sqrt(b * b - 4 * a * c)
    # Pick the sign that avoids cancellation in -b -+ disc.
    if abs(-b + disc) >= abs(-b - disc):
        big = (-b + disc) / (2 * a)
    else:
        big = (-b - disc) / (2 * a)
    if big == 0:
        return [mpc(0), mpc(0)]
    other = c / (a * big)
    return [big, other]


def roots_of_rational_poly(poly: Sequence[Fraction]) -> List[mpc]:
    """Roots of an exact-coefficient polynomial at ambient precision."""
    return aberth_roots([Fraction(c) for c in poly])


def refine_newton(coefficients: Sequence, z0: mpc, iterations: int = 40) -> mpc:
    """Plain Newton refinement of one root (used after deflation-free solves)."""
    coeffs = [to_mpc(c) for c in coefficients]
    z = to_mpc(z0)
    tol = mpf(2) ** (-(mp.prec - 8))
    for _ in range(iterations):
        p, dp = _poly_and_deriv(coeffs, z)
        if dp == 0:
            break
        step = p / dp
        z = z - step
        if abs(step) <= tol * (1 + abs(z)):
            break
    return z
