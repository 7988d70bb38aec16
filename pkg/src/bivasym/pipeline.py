"""Shared solve/estimate orchestration used by the CLI and scripts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .critical import (
    PROBABLY_STRICTLY_MINIMAL,
    CriticalPoint,
    TorusClass,
    dominant_class,
    group_by_torus,
    minimality_probe,
    solve_critical,
)
from .errors import HypothesisFailure
from .estimates import (
    AsymptoticEstimate,
    estimate_general,
    estimate_real_positive,
)
from .problem import ProblemSpec


@dataclass
class SolveOutcome:
    points: List[CriticalPoint]
    classes: List[TorusClass]
    dominant: Optional[TorusClass]

    def has_usable_point(self) -> bool:
        if self.dominant is None:
            return False
        return any(
            pt.smooth and pt.minimality == PROBABLY_STRICTLY_MINIMAL
            for pt in self.dominant.points
        )


def run_solve(spec: ProblemSpec, probe: bool = True) -> SolveOutcome:
    """Solve the critical system, classify tori, probe the dominant class."""
    points = solve_critical(spec.H, spec.direction, spec.tolerances)
    if not points:
        return SolveOutcome(points=[], classes=[], dominant=None)
    classes = group_by_torus(points, spec.tolerances.merge, spec.direction)
    dom = dominant_class(classes)
    if probe:
        for pt in dom.points:
            peers = [o for o in dom.points if o is not pt]
            minimality_probe(spec.H, pt, spec.probe_grid, peers, spec.tolerances)
    return SolveOutcome(points=points, classes=classes, dominant=dom)


def estimate_target(
    spec: ProblemSpec, outcome: SolveOutcome, r: int, s: int
) -> AsymptoticEstimate:
    """Estimate one coefficient from the dominant torus class.

    Uses the real-positive fast path when a single smooth point qualifies;
    otherwise the general sum.
    """
    if outcome.dominant is None:
        raise HypothesisFailure("critical_point_exists", "no critical points found")
    smooth_pts = [pt for pt in outcome.dominant.points if pt.smooth]
    if not smooth_pts:
        raise HypothesisFailure("smooth_point_exists", "no smooth dominant point")
    if len(smooth_pts) == 1:
        try:
            return estimate_real_positive(
                spec.H, spec.G, spec.beta, smooth_pts[0], r, s,
                spec.direction, spec.tolerances,
            )
        except HypothesisFailure:
            pass
    return estimate_general(
        spec.H, spec.G, spec.beta, smooth_pts, r, s,
        spec.direction, winding_steps=spec.winding_steps, tol=spec.tolerances,
    )
