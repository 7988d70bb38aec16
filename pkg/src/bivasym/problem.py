"""Problem files: JSON descriptions of one H, G, beta, direction, targets.

Coefficients are exact rational strings ("'-3/64'"), never floats, so a
problem file round-trips byte-for-byte through ``dump``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .bivariate import BivariatePolynomial
from .critical import Direction, ProbeGrid, Tolerances
from .errors import ConfigError, SpecFileError
from .rationals import format_rational, parse_rational

_DEFAULT_GRID = (512, 512)
_DEFAULT_WINDING_STEPS = 1024


@dataclass
class ProblemSpec:
    H: BivariatePolynomial
    beta: Fraction
    direction: Direction
    targets: List[Tuple[int, int]] = field(default_factory=list)
    G: Optional[BivariatePolynomial] = None
    oracle_box: Optional[Tuple[int, int]] = None
    quadrature_radii: Optional[Tuple[float, float]] = None
    quadrature_grid: Tuple[int, int] = _DEFAULT_GRID
    tolerances: Tolerances = field(default_factory=Tolerances)
    probe_grid: ProbeGrid = field(default_factory=ProbeGrid)
    winding_steps: int = _DEFAULT_WINDING_STEPS

    def __post_init__(self):
        if not self.H:
            raise ConfigError("H must be nonempty")
        if self.H.constant_term() == 0:
            raise ConfigError("H must have a nonzero constant term")
        if self.H.is_constant():
            raise ConfigError("H must be nonconstant")
        for r, s in self.targets:
            if r < 0 or s < 0:
                raise ConfigError(f"target ({r},{s}) must be nonnegative")

    def effective_box(self) -> Tuple[int, int]:
        if self.oracle_box is not None:
            return self.oracle_box
        if not self.targets:
            return (0, 0)
        return (max(r for r, _ in self.targets), max(s for _, s in self.targets))


def _poly_from_json(items, what: str) -> BivariatePolynomial:
    try:
        triples = [(int(i), int(j), parse_rational(c)) for i, j, c in items]
    except (TypeError, ValueError) as exc:
        raise SpecFileError(f"bad {what} term list: {exc}") from exc
    return BivariatePolynomial.from_items(triples)


def _poly_to_json(p: BivariatePolynomial):
    return [[i, j, format_rational(c)] for (i, j), c in p.sorted_terms()]


def parse_problem(text: str) -> ProblemSpec:
    """Parse a problem JSON document; SpecFileError carries line/column."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(
            f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            line=exc.lineno,
            column=exc.colno,
        ) from exc
    if not isinstance(doc, dict):
        raise SpecFileError("problem file must be a JSON object")
    try:
        H = _poly_from_json(doc["H"], "H")
        beta = parse_rational(doc["beta"])
        direction = Direction.from_string(doc["direction"])
    except KeyError as exc:
        raise SpecFileError(f"missing required field {exc.args[0]!r}") from exc

    G = _poly_from_json(doc["G"], "G") if "G" in doc else None
    targets = [(int(r), int(s)) for r, s in doc.get("targets", [])]
    oracle_box = tuple(int(v) for v in doc["oracle_box"]) if "oracle_box" in doc else None

    radii = None
    grid = _DEFAULT_GRID
    quad = doc.get("quadrature", {})
    if "radii" in quad:
        radii = (float(quad["radii"][0]), float(quad["radii"][1]))
    if "grid" in quad:
        grid = (int(quad["grid"][0]), int(quad["grid"][1]))

    tols = doc.get("tolerances", {})
    tolerances = Tolerances(
        residual=float(tols.get("residual", Tolerances.residual)),
        merge=float(tols.get("merge", Tolerances.merge)),
        identity=float(tols.get("identity", Tolerances.identity)),
        margin=float(tols.get("margin", Tolerances.margin)),
        boundary=float(tols.get("boundary", Tolerances.boundary)),
        smooth=float(tols.get("smooth", Tolerances.smooth)),
    )
    pg = doc.get("probe_grid", {})
    probe_grid = ProbeGrid(
        angles=int(pg.get("angles", ProbeGrid.angles)),
        radii=int(pg.get("radii", ProbeGrid.radii)),
    )
    winding_steps = int(doc.get("winding_steps", _DEFAULT_WINDING_STEPS))

    try:
        return ProblemSpec(
            H=H,
            beta=beta,
            direction=direction,
            targets=targets,
            G=G,
            oracle_box=oracle_box,
            quadrature_radii=radii,
            quadrature_grid=grid,
            tolerances=tolerances,
            probe_grid=probe_grid,
            winding_steps=winding_steps,
        )
    except ConfigError as exc:
        raise SpecFileError(str(exc)) from exc


def dump_problem(spec: ProblemSpec) -> str:
    """Canonical serialization; re-parsing yields an identical spec."""
    doc = {
        "H": _poly_to_json(spec.H),
        "beta": format_rational(spec.beta),
        "direction": str(spec.direction),
        "targets": [[r, s] for r, s in spec.targets],
    }
    if spec.G is not None:
        doc["G"] = _poly_to_json(spec.G)
    if spec.oracle_box is not None:
        doc["oracle_box"] = list(spec.oracle_box)
    quad = {}
    if spec.quadrature_radii is not None:
        quad["radii"] = [spec.quadrature_radii[0], spec.quadrature_radii[1]]
    if spec.quadrature_grid != _DEFAULT_GRID:
        quad["grid"] = list(spec.quadrature_grid)
    if quad:
        doc["quadrature"] = quad
    if spec.tolerances != Tolerances():
        doc["tolerances"] = {
            "residual": spec.tolerances.residual,
            "merge": spec.tolerances.merge,
            "identity": spec.tolerances.identity,
            "margin": spec.tolerances.margin,
            "boundary": spec.tolerances.boundary,
            "smooth": spec.tolerances.smooth,
        }
    if spec.probe_grid != ProbeGrid():
        doc["probe_grid"] = {
            "angles": spec.probe_grid.angles,
            "radii": spec.probe_grid.radii,
        }
    if spec.winding_steps != _DEFAULT_WINDING_STEPS:
        doc["winding_steps"] = spec.winding_steps
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
