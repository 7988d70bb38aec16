"""Ground-truth coefficient tables for G * H**(-beta).

Three independent routes:

* an exact rational recurrence driven by the identity H*F_x = -beta*H_x*F
  (with the analogous y-identity seeding the x = 0 column),
* a closed form for linear H via generalized binomials,
* numerical Cauchy quadrature over a torus, with the branch of H**(-beta)
  fixed by continuous argument tracking anchored at the origin.

Exact tables are stored for (H/h00)**(-beta); the scalar h00**(-beta) is
kept as a symbolic prefactor and folded in only when it is rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np
from mpmath import mp, mpc, mpf

from .bivariate import BivariatePolynomial
from .errors import BranchTrackingError, ConfigError, SingularAtOrigin
from .precision import to_mpc, to_mpf
from .rationals import binomial_general
from .series import Prefactor, TruncatedSeries, poly_times_series

Box = Tuple[int, int]

_JUMP_LIMIT = 0.95 * math.pi


@dataclass(frozen=True)
class OracleConfig:
    """Quadrature setup: box, exponent, torus radii, angular grid sizes."""

    box: Box
    beta: Fraction
    quadrature_radii: Tuple[float, float]
    quadrature_grid: Tuple[int, int] = (512, 512)

    def __post_init__(self):
        R, S = self.box
        if R < 0 or S < 0:
            raise ConfigError("box must be nonnegative")
        c1, c2 = self.quadrature_radii
        if not (c1 > 0 and c2 > 0):
            raise ConfigError("quadrature radii must be positive")
        N1, N2 = self.quadrature_grid
        for n in (N1, N2):
            if n < 64 or (n & (n - 1)) != 0:
                raise ConfigError("quadrature grid sizes must be powers of two >= 64")
        if R >= N1 // 4 or S >= N2 // 4:
            raise ConfigError("box too large for quadrature grid; raise the grid size")


class CoefficientTable:
    """Coefficients of G*H**(-beta) on a box, exact or numeric.

    Exact sources ("recurrence", "closed-form") populate ``series`` and
    ``prefactor``; the "quadrature" source populates complex ``values``
    with per-entry error estimates.
    """

    def __init__(
        self,
        beta: Fraction,
        source: str,
        series: Optional[TruncatedSeries] = None,
        prefactor: Prefactor = Prefactor(),
        values: Optional[np.ndarray] = None,
        errors: Optional[np.ndarray] = None,
    ):
        self.beta = beta
        self.source = source
        self.series = series
        self.prefactor = prefactor
        self.values = values
        self.errors = errors

    @property
    def box(self) -> Box:
        if self.series is not None:
            return self.series.box
        return (self.values.shape[0] - 1, self.values.shape[1] - 1)

    def entry_exact(self, r: int, s: int) -> Tuple[Fraction, Prefactor]:
        if self.series is None:
            raise ConfigError("numeric table has no exact entries")
        return self.series.coeffs[r][s], self.prefactor

    def value(self, r: int, s: int):
        """Entry value at current precision (prefactor folded in)."""
        if self.series is not None:
            v = to_mpf(self.series.coeffs[r][s])
            if self.prefactor.is_one():
                return v
            pv = self.prefactor.value()
            return v * pv
        return to_mpc(complex(self.values[r, s]))

    def log10_abs(self, r: int, s: int):
        """log10 |entry|, exact path overflow-safe; -inf for a zero entry."""
        if self.series is not None:
            c = self.series.coeffs[r][s]
            if c == 0:
                return mp.ninf
            return mp.log(abs(to_mpf(c)), 10) + self.prefactor.log10_abs()
        v = abs(complex(self.values[r, s]))
        return mp.ninf if v == 0 else mp.log(to_mpf(v), 10)

    def entry_error(self, r: int, s: int) -> float:
        if self.errors is None:
            return 0.0
        return float(self.errors[r, s])


def _normalized_coeffs(H: BivariatePolynomial) -> Tuple[dict, Fraction]:
    h00 = H.constant_term()
    if h00 == 0:
        raise SingularAtOrigin("singular at origin")
    return {ij: c / h00 for ij, c in H.terms.items()}, h00


def coeff_recurrence(
    H: BivariatePolynomial,
    G: Optional[BivariatePolynomial],
    beta: Fraction,
    box: Box,
    order: str = "rows",
) -> CoefficientTable:
    """Exact table of G*H**(-beta) from the differential recurrence.

    ``order`` selects the fill schedule ("rows" or "antidiagonal"); both
    produce identical exact values, which the test suite checks.

    The stored series is that of G*(H/h00)**(-beta); the symbolic scalar
    h00**(-beta) is folded into the table when rational, otherwise carried
    as the prefactor.
    """
    beta = Fraction(beta)
    R, S = int(box[0]), int(box[1])
    h, h00 = _normalized_coeffs(H)
    dy = H.degree_y()

    f = [[Fraction(0)] * (S + 1) for _ in range(R + 1)]
    f[0][0] = Fraction(1)

    col = [h.get((0, j), Fraction(0)) for j in range(dy + 1)]

    def fill_entry(a: int, b: int) -> None:
        if a == 0 and b == 0:
            return
        if a == 0:
            s = b - 1
            total = Fraction(0)
            for j in range(1, min(dy, s + 1) + 1):
                cj = col[j]
                if cj:
                    total += cj * ((s - j + 1) + beta * j) * f[0][s - j + 1]
            f[0][b] = -total / (s + 1)
            return
        r = a - 1
        total = Fraction(0)
        for (i, j), hij in h.items():
            if i == 0 and j == 0:
                continue
            rr = r - i + 1
            ss = b - j
            if rr < 0 or ss < 0:
                continue
            total += hij * ((r - i + 1) + beta * i) * f[rr][ss]
        f[a][b] = -total / (r + 1)

    if order == "rows":
        for a in range(R + 1):
            for b in range(S + 1):
                fill_entry(a, b)
    elif order == "antidiagonal":
        for d in range(R + S + 1):
            for a in range(min(d, R), max(0, d - S) - 1, -1):
                fill_entry(a, d - a)
    else:
        raise ConfigError(f"unknown fill order {order!r}")

    series = TruncatedSeries((R, S), f)
    if G is not None and G != BivariatePolynomial.constant(1):
        series = poly_times_series(G, series)
    prefactor = Prefactor(h00, -beta)
    rational = prefactor.rational_value()
    if rational is not None:
        series = series.scale(rational)
        prefactor = Prefactor()
    return CoefficientTable(beta, "recurrence", series=series, prefactor=prefactor)


def coeff_linear_closed_form(
    c0: Fraction, c1: Fraction, c2: Fraction, beta: Fraction, r: int, s: int
) -> Tuple[Fraction, Prefactor]:
    """[x^r y^s] (c0 + c1*x + c2*y)**(-beta) by generalized binomials.

    Returns the exact rational part and the symbolic prefactor c0**(-beta)
    (folded into the rational part when it is itself rational).
    """
    c0, c1, c2, beta = Fraction(c0), Fraction(c1), Fraction(c2), Fraction(beta)
    if c0 == 0:
        raise SingularAtOrigin("singular at origin")
    n = r + s
    rational = (
        binomial_general(-beta, n)
        * math.comb(n, r)
        * c1**r
        * c2**s
        / c0**n
    )
    prefactor = Prefactor(c0, -beta)
    folded = prefactor.rational_value()
    if folded is not None:
        return rational * folded, Prefactor()
    return rational, prefactor


def closed_form_table(
    H: BivariatePolynomial, beta: Fraction, box: Box
) -> CoefficientTable:
    """Full box of closed-form entries for linear H = c0 + c1*x + c2*y."""
    if H.degree_x() > 1 or H.degree_y() > 1 or H.coefficient(1, 1) != 0:
        raise ConfigError("closed form requires linear H")
    c0 = H.constant_term()
    c1 = H.coefficient(1, 0)
    c2 = H.coefficient(0, 1)
    R, S = box
    coeffs = []
    prefactor = Prefactor(Fraction(c0), -Fraction(beta))
    folded = prefactor.rational_value() is not None
    for r in range(R + 1):
        row = []
        for s in range(S + 1):
            val, _ = coeff_linear_closed_form(c0, c1, c2, beta, r, s)
            row.append(val)
        coeffs.append(row)
    series = TruncatedSeries((R, S), coeffs)
    return CoefficientTable(
        Fraction(beta),
        "closed-form",
        series=series,
        prefactor=Prefactor() if folded else prefactor,
    )


# ----------------------------------------------------------------------
# Cauchy quadrature
# ----------------------------------------------------------------------


def _eval_grid(p: BivariatePolynomial, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Vectorized evaluation on the outer product of grids X (axis 0), Y (axis 1)."""
    out = np.zeros((X.size, Y.size), dtype=np.complex128)
    xs = X.reshape(-1, 1)
    ys = Y.reshape(1, -1)
    for (i, j), c in sorted(p.terms.items()):
        out += float(c) * xs**i * ys**j
    return out


def _radial_anchor_arg(H: BivariatePolynomial, c1: float, c2: float) -> float:
    """Continuous argument of H(t*c1, t*c2) at t = 1, starting from t = 0.

    The start value is the principal argument of H(0,0); the segment is
    refined adaptively until every step is below pi/8.
    """
    h00 = complex(H.constant_term())
    samples = 257
    for _ in range(14):
        t = np.linspace(0.0, 1.0, samples)
        vals = np.zeros(samples, dtype=np.complex128)
        for (i, j), c in sorted(H.terms.items()):
            vals += float(c) * (t * c1) ** i * (t * c2) ** j
        if np.min(np.abs(vals)) <= 1e-12 * max(1.0, abs(h00)):
            raise BranchTrackingError(
                "branch tracking failed; H vanishes on the radial anchor segment"
            )
        steps = np.angle(vals[1:] / vals[:-1])
        if np.max(np.abs(steps)) < math.pi / 8:
            return float(np.angle(vals[0]) + steps.sum())
        samples = 2 * samples - 1
    raise BranchTrackingError("branch tracking failed; refine grid")


def _continuous_args(W: np.ndarray, anchor: float) -> np.ndarray:
    """Anchored continuous argument over the torus grid.

    Tracks along the theta1 line at theta2 = 0 and then along theta2 for
    each theta1, verifying that no wrapped step comes near +-pi.
    """
    d0 = np.angle(W[1:, 0] / W[:-1, 0])
    d1 = np.angle(W[:, 1:] / W[:, :-1])
    if d0.size and np.max(np.abs(d0)) >= _JUMP_LIMIT:
        raise BranchTrackingError("branch tracking failed; refine grid")
    if d1.size and np.max(np.abs(d1)) >= _JUMP_LIMIT:
        raise BranchTrackingError("branch tracking failed; refine grid")
    args = np.empty(W.shape, dtype=np.float64)
    args[0, 0] = anchor
    args[1:, 0] = anchor + np.cumsum(d0)
    args[:, 1:] = args[:, :1] + np.cumsum(d1, axis=1)
    return args


def quadrature_values(
    H: BivariatePolynomial,
    G: Optional[BivariatePolynomial],
    beta: Fraction,
    cfg: OracleConfig,
) -> CoefficientTable:
    """Numeric coefficient table over the full box by torus quadrature.

    Composite trapezoid rule over both angles (spectrally accurate for the
    periodic analytic integrand), realized as one FFT; the error estimate
    per entry is the difference against the half-resolution grid.
    """
    R, S = cfg.box
    c1, c2 = cfg.quadrature_radii
    N1, N2 = cfg.quadrature_grid
    b = float(to_mpf(Fraction(beta)))

    th1 = 2.0 * np.pi * np.arange(N1) / N1
    th2 = 2.0 * np.pi * np.arange(N2) / N2
    X = c1 * np.exp(1j * th1)
    Y = c2 * np.exp(1j * th2)
    W = _eval_grid(H, X, Y)
    scale = float(H.coefficient_scale())
    if np.min(np.abs(W)) <= 1e-9 * max(scale, 1.0):
        raise BranchTrackingError(
            "branch tracking failed; H nearly vanishes on the torus"
        )
    anchor = _radial_anchor_arg(H, c1, c2)
    args = _continuous_args(W, anchor)
    F = np.exp(-b * (np.log(np.abs(W)) + 1j * args))
    if G is not None and G != BivariatePolynomial.constant(1):
        F = F * _eval_grid(G, X, Y)

    def extract(values: np.ndarray) -> np.ndarray:
        n1, n2 = values.shape
        spec = np.fft.fft2(values) / (n1 * n2)
        rows = np.arange(R + 1).reshape(-1, 1)
        cols = np.arange(S + 1).reshape(1, -1)
        return spec[: R + 1, : S + 1] / (c1**rows * c2**cols)

    full = extract(F)
    half = extract(F[::2, ::2])
    errors = np.abs(full - half)
    return CoefficientTable(Fraction(beta), "quadrature", values=full, errors=errors)


def cauchy_quadrature(
    H: BivariatePolynomial,
    G: Optional[BivariatePolynomial],
    beta: Fraction,
    r: int,
    s: int,
    cfg: OracleConfig,
):
    """One coefficient by torus quadrature: (value, error_estimate)."""
    if r > cfg.box[0] or s > cfg.box[1]:
        raise ConfigError("target outside the oracle box")
    table = quadrature_values(H, G, beta, cfg)
    return table.value(r, s), table.entry_error(r, s)


# ----------------------------------------------------------------------
# CSV export
# ----------------------------------------------------------------------


def table_to_csv(table: CoefficientTable) -> str:
    """Deterministic CSV, LF endings; exact tables carry the prefactor header."""
    lines = []
    R, S = table.box
    if table.series is not None:
        lines.append(f"# prefactor: {table.prefactor}")
        lines.append("r,s,numerator,denominator,value")
        for r in range(R + 1):
            for s in range(S + 1):
                c = table.series.coeffs[r][s]
                v = table.value(r, s)
                lines.append(f"{r},{s},{c.numerator},{c.denominator},{_fmt(v)}")
    else:
        lines.append("r,s,real,imag,error")
        for r in range(R + 1):
            for s in range(S + 1):
                z = complex(table.values[r, s])
                lines.append(
                    f"{r},{s},{z.real:.17g},{z.imag:.17g},{table.entry_error(r, s):.3e}"
                )
    return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, mpc):
        return f"{mp.nstr(v.real, 17)}+{mp.nstr(v.imag, 17)}j"
    return mp.nstr(mpf(v), 17)
