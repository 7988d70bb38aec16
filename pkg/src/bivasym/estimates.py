"""Saddle-point asymptotics of [x^r y^s] G*H**(-beta).

Per critical point the estimate needs the gradient ratio and curvature of
the zero set, the second derivative of the saddle phase, a branch value
of (-H_x*p)**(-beta) on a chosen ray, and the signed count of branch-cut
crossings along H(t*p, t*q).  The general path sums contributions over
one torus class in log space; a real-positive fast path covers the
common case of a single positive critical point of a real H.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from mpmath import mp, mpc, mpf

from .bivariate import BivariatePolynomial
from .critical import CriticalPoint, Direction, Tolerances
from .errors import BranchTrackingError, ConfigError, HypothesisFailure
from .gammafn import gamma_log
from .precision import to_mpc, to_mpf

TWO_PI = 2.0 * math.pi


@dataclass
class LocalData:
    """Derivative data of H at one critical point.

    ``grad_ratio`` is H_y/H_x; ``curvature`` the second-order coefficient
    of the zero-set parametrization; ``phase_hessian`` the second
    derivative of the logarithmic phase at the saddle.  ``checks`` maps
    precondition names to pass/fail.
    """

    point: CriticalPoint
    grad_ratio: mpc
    curvature: mpc
    phase_hessian: mpc
    hx: mpc
    hy: mpc
    branch_value: Optional[mpc] = None
    winding: Optional[int] = None
    checks: dict = field(default_factory=dict)

    def failed_checks(self) -> List[str]:
        return [name for name, ok in self.checks.items() if not ok]


@dataclass(frozen=True)
class BranchRay:
    """Branch-cut ray from the origin at ``angle`` in [0, 2*pi)."""

    angle: float

    def __post_init__(self):
        a = float(self.angle) % TWO_PI
        object.__setattr__(self, "angle", a)


@dataclass
class AsymptoticEstimate:
    """Estimate value with per-point provenance."""

    value: mpc
    log10_modulus: mpf
    argument: float
    r: int
    s: int
    formula: str
    contributions: List[dict] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


def local_data(
    H: BivariatePolynomial,
    pt: CriticalPoint,
    direction: Direction,
    tol: Tolerances = Tolerances(),
) -> LocalData:
    """Evaluate the local derivative data of H at a polished critical point.

    All partial derivatives are taken exactly and only then evaluated.
    Raises HypothesisFailure when H_x vanishes at the point (the saddle
    geometry needs the zero set to be a graph over y there).
    """
    p, q = pt.p, pt.q
    hx = H.partial("x").eval(p, q)
    hy = H.partial("y").eval(p, q)
    scale = to_mpf(H.coefficient_scale())
    if abs(hx) <= tol.smooth * scale:
        raise HypothesisFailure("hx_nonzero", "non-smooth in x; estimate inapplicable")
    hxx = H.partial("x").partial("x").eval(p, q)
    hxy = H.partial("x").partial("y").eval(p, q)
    hyy = H.partial("y").partial("y").eval(p, q)
    lam = to_mpf(direction.ratio)

    ratio = hy / hx
    curv = (ratio * ratio * hxx - 2 * ratio * hxy + hyy) / (2 * hx)
    m = -2 * curv / p - ratio * ratio / (p * p) - 1 / (lam * q * q)

    checks = {
        "hx_nonzero": True,
        "p_nonzero": abs(p) > 0,
        "q_nonzero": abs(q) > 0,
        "phase_hessian_nonzero": abs(m) > tol.smooth**2,
        "saddle_real_part_positive": (-(q * q) * m).real > 0,
        "grad_ratio_identity": bool(
            abs(ratio - p / (lam * q)) <= to_mpf(tol.identity) * max(abs(ratio), to_mpf(1e-30))
        ),
    }
    return LocalData(
        point=pt,
        grad_ratio=ratio,
        curvature=curv,
        phase_hessian=m,
        hx=hx,
        hy=hy,
        checks=checks,
    )


# ----------------------------------------------------------------------
# Branch bookkeeping
# ----------------------------------------------------------------------


def choose_branch_ray(
    H: BivariatePolynomial,
    points: Sequence[CriticalPoint],
    margin: float = 1e-6,
) -> BranchRay:
    """A cut ray avoiding every -p_i*H_x(p_i,q_i) and the anchor H(0,0).

    The chooser bisects the largest angular gap between excluded
    directions, breaking ties toward the negative real axis, and fails if
    even the best ray has angular margin below ``margin``.
    """
    hx_poly = H.partial("x")
    excluded = [float(mp.arg(to_mpc(H.constant_term()))) % TWO_PI]
    for pt in points:
        w = -pt.p * hx_poly.eval(pt.p, pt.q)
        if abs(w) == 0:
            raise HypothesisFailure("hx_nonzero", "cannot place branch ray: -p*H_x = 0")
        excluded.append(float(mp.arg(w)) % TWO_PI)
    angles = sorted(set(excluded))
    best_angle, best_margin = None, -1.0
    for k, a in enumerate(angles):
        b = angles[(k + 1) % len(angles)]
        gap = (b - a) % TWO_PI
        if len(angles) == 1:
            gap = TWO_PI
        mid = (a + gap / 2.0) % TWO_PI
        half = gap / 2.0
        better = half > best_margin + 1e-15
        tie = abs(half - best_margin) <= 1e-15
        if better or (tie and _dist_to_pi(mid) < _dist_to_pi(best_angle)):
            best_angle, best_margin = mid, half
    if best_margin < margin:
        raise ConfigError(f"no branch ray with angular margin >= {margin}")
    return BranchRay(best_angle)


def _dist_to_pi(angle: Optional[float]) -> float:
    if angle is None:
        return math.inf
    d = abs(angle - math.pi) % TWO_PI
    return min(d, TWO_PI - d)


def branch_argument(w: mpc, ray: BranchRay, anchor_arg) -> mpf:
    """Argument of ``w`` on the branch cut along ``ray`` anchored at ``anchor_arg``.

    The branch assigns arguments in the open 2*pi interval with endpoints
    on the ray that contains the anchor argument; values on the cut are an
    error.
    """
    a0 = to_mpf(anchor_arg)
    ray_a = to_mpf(ray.angle)
    # Interval start: the ray representative just below the anchor.
    k = mp.floor((a0 - ray_a) / (2 * mp.pi))
    lo = ray_a + 2 * mp.pi * k
    if a0 == lo:
        raise BranchTrackingError("anchor argument lies on the branch cut")
    theta = mp.arg(w)
    j = mp.floor((theta - lo) / (2 * mp.pi))
    rep = theta - 2 * mp.pi * j
    if rep == lo:
        raise BranchTrackingError("value lies on the branch cut")
    return rep


def principal_on_ray(w: mpc, beta, ray: BranchRay, anchor_arg) -> mpc:
    """w**(-beta) using the anchored ray branch of the logarithm."""
    theta = branch_argument(w, ray, anchor_arg)
    b = to_mpf(beta)
    return mp.exp(-b * (mp.log(abs(w)) + mpc(0, 1) * theta))


def winding_number(
    H: BivariatePolynomial,
    pt: CriticalPoint,
    ray: BranchRay,
    steps: int = 1024,
) -> int:
    """Signed crossings of the cut ray by the curve H(t*p, t*q), 0 <= t < 1.

    The curve is sampled on an adaptive grid (refined until each argument
    step is below pi/8), capped at t = 1 - 1e-6; the remaining tail is
    linear to first order with direction -(p*H_x + q*H_y), which at a
    critical point matches -p*H_x up to a positive real factor.
    """
    if steps < 1024:
        raise ConfigError("winding sampling needs at least 1024 steps")
    p, q = complex(pt.p), complex(pt.q)
    cap = 1.0 - 1e-6
    scale = float(H.coefficient_scale())
    terms = [(i, j, float(c)) for (i, j), c in H.sorted_terms()]

    def curve(ts: np.ndarray) -> np.ndarray:
        vals = np.zeros(len(ts), dtype=np.complex128)
        for i, j, c in terms:
            vals += c * (ts * p) ** i * (ts * q) ** j
        return vals

    ts = np.linspace(0.0, cap, steps + 1)
    vals = curve(ts)
    for _ in range(24):
        if np.min(np.abs(vals)) <= 1e-9 * max(scale, 1.0):
            raise BranchTrackingError(
                "curve passes near origin; refine or reject minimality"
            )
        deltas = np.angle(vals[1:] / vals[:-1])
        coarse = np.abs(deltas) > math.pi / 8
        if not coarse.any():
            break
        mids = 0.5 * (ts[:-1][coarse] + ts[1:][coarse])
        ts = np.sort(np.concatenate([ts, mids]))
        vals = curve(ts)
    else:
        raise BranchTrackingError("winding sampling did not settle; refine grid")

    theta_start = float(np.angle(vals[0]))
    theta_end = theta_start + float(deltas.sum())
    # Analytic tail: argument converges to the linearized direction.
    hx = H.partial("x").eval(pt.p, pt.q)
    hy = H.partial("y").eval(pt.p, pt.q)
    tail = -(pt.p * hx + pt.q * hy)
    if abs(tail) == 0:
        raise HypothesisFailure("hx_nonzero", "degenerate tail direction")
    step = float(mp.arg(to_mpc(tail))) - (theta_end % TWO_PI)
    step = (step + math.pi) % TWO_PI - math.pi
    theta_final = theta_end + step

    alpha = ray.angle
    return int(
        math.floor((theta_final - alpha) / TWO_PI)
        - math.floor((theta_start - alpha) / TWO_PI)
    )


# ----------------------------------------------------------------------
# Estimates
# ----------------------------------------------------------------------


def _check_beta(beta) -> mpf:
    b = to_mpf(beta)
    if b <= 0 and mp.floor(b) == b:
        raise HypothesisFailure(
            "beta_not_nonpositive_integer", "exponent is a nonpositive integer"
        )
    return b


def _drift_warning(direction: Direction, r: int, s: int) -> Optional[str]:
    drift = abs(r * direction.s0 - s * direction.r0)
    if drift > math.sqrt(max(r, s)):
        return (
            f"target ({r},{s}) drifts from direction {direction} "
            f"by {drift}; estimate uses the solve direction"
        )
    return None


def estimate_general(
    H: BivariatePolynomial,
    G: Optional[BivariatePolynomial],
    beta,
    points: Sequence[CriticalPoint],
    r: int,
    s: int,
    direction: Direction,
    ray: Optional[BranchRay] = None,
    winding_steps: int = 1024,
    tol: Tolerances = Tolerances(),
) -> AsymptoticEstimate:
    """Sum of saddle contributions over one torus class of critical points.

    Complex powers p**(-r), q**(-s) are carried in log space (modulus via
    logarithms, argument separately), so targets far beyond double range
    are fine.  Raises HypothesisFailure naming the first violated
    precondition.
    """
    if not points:
        raise ConfigError("no critical points supplied")
    b = _check_beta(beta)
    _require_same_torus(points, tol.merge)
    locals_ = []
    for pt in points:
        ld = local_data(H, pt, direction, tol)
        failed = ld.failed_checks()
        if failed:
            raise HypothesisFailure(failed[0], f"critical point fails {failed}")
        locals_.append(ld)
    if ray is None:
        ray = choose_branch_ray(H, points)
    anchor = mp.arg(to_mpc(H.constant_term()))

    sign_gamma, ln_abs_gamma = gamma_log(float(b))
    ln_r = mp.log(to_mpf(r))

    logmods, args, contribs = [], [], []
    for ld in locals_:
        pt = ld.point
        w = -pt.p * ld.hx
        theta_w = branch_argument(w, ray, anchor)
        omega = winding_number(H, pt, ray, winding_steps)
        ld.winding = omega
        ld.branch_value = mp.exp(-b * (mp.log(abs(w)) + mpc(0, 1) * theta_w))

        q2m = -2 * mp.pi * pt.q * pt.q * ld.phase_hessian
        gval = G.eval(pt.p, pt.q) if G is not None else to_mpc(1)

        logmod = (
            (b - mpf(3) / 2) * ln_r
            - to_mpf(r) * mp.log(abs(pt.p))
            - to_mpf(s) * mp.log(abs(pt.q))
            - b * mp.log(abs(w))
            - ln_abs_gamma
            - mp.log(abs(q2m)) / 2
        )
        arg = (
            -to_mpf(r) * mp.arg(pt.p)
            - to_mpf(s) * mp.arg(pt.q)
            - b * (theta_w + 2 * mp.pi * omega)
            - mp.arg(q2m) / 2
        )
        if sign_gamma < 0:
            arg = arg + mp.pi
        if abs(gval) == 0:
            logmod, arg = mp.ninf, to_mpf(0)
        else:
            logmod = logmod + mp.log(abs(gval))
            arg = arg + mp.arg(gval)
        logmods.append(logmod)
        args.append(arg)
        contribs.append(
            {
                "log10_modulus": logmod / mp.log(10),
                "argument": arg,
                "winding": omega,
                "branch_value": ld.branch_value,
                "point": (pt.p, pt.q),
            }
        )

    peak = max(lm for lm in logmods)
    if peak == mp.ninf:
        value = to_mpc(0)
    else:
        acc = to_mpc(0)
        for lm, a in zip(logmods, args):
            if lm == mp.ninf:
                continue
            acc += mp.exp(mpc(lm - peak, a))
        value = acc * mp.exp(peak)

    warnings = []
    drift = _drift_warning(direction, r, s)
    if drift:
        warnings.append(drift)
    if _conjugate_closed(points, tol.merge):
        if abs(value) > 0 and abs(value.imag) > 1e-8 * abs(value):
            warnings.append(
                "conjugate-cancellation failed: imaginary part "
                f"{mp.nstr(value.imag, 5)} survives; square-root branch suspect"
            )

    log10_modulus = mp.ninf if abs(value) == 0 else mp.log(abs(value), 10)
    return AsymptoticEstimate(
        value=value,
        log10_modulus=log10_modulus,
        argument=float(mp.arg(value)) if abs(value) > 0 else 0.0,
        r=r,
        s=s,
        formula="general",
        contributions=contribs,
        warnings=warnings,
    )


def estimate_real_positive(
    H: BivariatePolynomial,
    G: Optional[BivariatePolynomial],
    beta,
    pt: CriticalPoint,
    r: int,
    s: int,
    direction: Direction,
    tol: Tolerances = Tolerances(),
) -> AsymptoticEstimate:
    """Fast path: single real-positive critical point of a real H.

    All-real log-space evaluation; every precondition is runtime-checked
    and a violation raises HypothesisFailure directing the caller to the
    general path.
    """
    b = _check_beta(beta)
    ld = local_data(H, pt, direction, tol)
    failed = ld.failed_checks()
    if failed:
        raise HypothesisFailure(failed[0], f"critical point fails {failed}")

    p, q = pt.p, pt.q
    tiny = mpf(10) ** (-mp.dps + 6)
    if abs(p.imag) > tiny * abs(p) or p.real <= 0:
        raise HypothesisFailure("p_real_positive", "p is not real positive")
    if abs(q.imag) > tiny * abs(q) or q.real <= 0:
        raise HypothesisFailure("q_real_positive", "q is not real positive")
    if H.constant_term() <= 0:
        raise HypothesisFailure("origin_positive", "H(0,0) must be positive")
    w = -p.real * ld.hx.real
    if abs(ld.hx.imag) > tiny * abs(ld.hx) or w <= 0:
        raise HypothesisFailure("neg_hx_p_positive", "-H_x(p,q)*p is not real positive")
    m = ld.phase_hessian
    q2m = -2 * mp.pi * q.real * q.real * m.real
    if abs(m.imag) > tiny * abs(m) or q2m <= 0:
        raise HypothesisFailure("saddle_real_part_positive", "-2*pi*q^2*M is not positive")

    sign_gamma, ln_abs_gamma = gamma_log(float(b))
    ln_val = (
        (b - mpf(3) / 2) * mp.log(to_mpf(r))
        - to_mpf(r) * mp.log(p.real)
        - to_mpf(s) * mp.log(q.real)
        - b * mp.log(w)
        - ln_abs_gamma
        - mp.log(q2m) / 2
    )
    gval = G.eval(p, q).real if G is not None else mpf(1)
    value = sign_gamma * mp.exp(ln_val) * gval

    warnings = []
    drift = _drift_warning(direction, r, s)
    if drift:
        warnings.append(drift)
    log10_modulus = mp.ninf if value == 0 else mp.log(abs(value), 10)
    return AsymptoticEstimate(
        value=value,
        log10_modulus=log10_modulus,
        argument=0.0 if value >= 0 else math.pi,
        r=r,
        s=s,
        formula="real-positive",
        contributions=[
            {
                "log10_modulus": log10_modulus,
                "argument": 0.0,
                "winding": 0,
                "branch_value": mp.exp(-b * mp.log(w)),
                "point": (p, q),
            }
        ],
        warnings=warnings,
    )


def _require_same_torus(points: Sequence[CriticalPoint], tol: float) -> None:
    mp0, mq0 = (abs(points[0].p), abs(points[0].q))
    for pt in points[1:]:
        if (
            abs(abs(pt.p) - mp0) > tol * (1 + mp0)
            or abs(abs(pt.q) - mq0) > tol * (1 + mq0)
        ):
            raise ConfigError("critical points are not on one torus")


def _conjugate_closed(points: Sequence[CriticalPoint], tol: float) -> bool:
    for pt in points:
        if not any(pt.conjugate_of(other, tol) for other in points):
            return False
    return True


def report_estimate(est: AsymptoticEstimate) -> dict:
    """JSON-ready estimate report (17-digit value plus log-modulus form)."""
    out = {
        "r": est.r,
        "s": est.s,
        "formula": est.formula,
        "value": {
            "re": mp.nstr(mpc(est.value).real, 17),
            "im": mp.nstr(mpc(est.value).imag, 17),
        },
        "log10_modulus": mp.nstr(est.log10_modulus, 17)
        if est.log10_modulus != mp.ninf
        else "-inf",
        "argument": f"{est.argument:.17g}",
        "warnings": list(est.warnings),
        "contributions": [
            {
                "log10_modulus": mp.nstr(c["log10_modulus"], 17),
                "argument": mp.nstr(c["argument"], 17),
                "winding": c["winding"],
                "branch_value": {
                    "re": mp.nstr(mpc(c["branch_value"]).real, 17),
                    "im": mp.nstr(mpc(c["branch_value"]).imag, 17),
                },
                "point": {
                    "p": {"re": mp.nstr(mpc(c["point"][0]).real, 17), "im": mp.nstr(mpc(c["point"][0]).imag, 17)},
                    "q": {"re": mp.nstr(mpc(c["point"][1]).real, 17), "im": mp.nstr(mpc(c["point"][1]).imag, 17)},
                },
            }
            for c in est.contributions
        ],
    }
    return out
