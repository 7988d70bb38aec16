"""Command line front end: solve, estimate, oracle, compare.

Exit codes: 0 success, 2 no valid critical point, 64 problem-file parse
error, 65 configuration error, 70 internal numerical failure.  All file
output is deterministic (sorted keys, fixed formats, LF endings).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np
from mpmath import mp, mpf

from .critical import report_critical_points
from .errors import (
    BivasymError,
    ConfigError,
    HypothesisFailure,
    SpecFileError,
)
from .estimates import report_estimate
from .oracle import OracleConfig, coeff_recurrence, quadrature_values, table_to_csv
from .pipeline import estimate_target, run_solve
from .precision import set_precision
from .problem import ProblemSpec, dump_problem, parse_problem

EXIT_OK = 0
EXIT_NO_CRITICAL_POINT = 2
EXIT_PARSE = 64
EXIT_CONFIG = 65
EXIT_NUMERICAL = 70


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bivasym",
        description=(
            "Coefficient asymptotics of bivariate G*H^(-beta) generating "
            "functions, with exact and numeric coefficient oracles."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("solve", "find and classify critical points"),
        ("estimate", "asymptotic estimates at the targets"),
        ("oracle", "exact coefficient table export"),
        ("compare", "estimate vs exact comparison table"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--spec", required=True, help="problem JSON file")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--precision", type=int, help="significand bits")
        p.add_argument("--grid", type=int, help="quadrature grid override (n x n)")
        p.add_argument(
            "--quadrature",
            action="store_true",
            help="oracle: add numeric quadrature columns",
        )
        p.add_argument(
            "--dump-spec",
            action="store_true",
            help="print the canonical form of the problem file and exit",
        )
    return parser


def _emit(text: str, out_path) -> None:
    if out_path:
        Path(out_path).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)


def _load_spec(args) -> ProblemSpec:
    try:
        text = Path(args.spec).read_text()
    except OSError as exc:
        raise SpecFileError(f"cannot read {args.spec}: {exc}") from exc
    return parse_problem(text)


def _json_doc(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def cmd_solve(spec: ProblemSpec, args) -> int:
    outcome = run_solve(spec)
    doc = report_critical_points(outcome.points)
    doc["torus_classes"] = [
        {
            "index": cl.index,
            "modulus_p": f"{cl.modulus_p:.17g}",
            "modulus_q": f"{cl.modulus_q:.17g}",
            "dominant": cl.dominant,
            "size": len(cl.points),
        }
        for cl in outcome.classes
    ]
    _emit(_json_doc(doc), args.out)
    return EXIT_OK if outcome.has_usable_point() else EXIT_NO_CRITICAL_POINT


def cmd_estimate(spec: ProblemSpec, args) -> int:
    outcome = run_solve(spec)
    if outcome.dominant is None or not any(pt.smooth for pt in outcome.dominant.points):
        sys.stderr.write("no smooth critical point on the dominant torus\n")
        return EXIT_NO_CRITICAL_POINT
    reports = [
        report_estimate(estimate_target(spec, outcome, r, s))
        for r, s in spec.targets
    ]
    _emit(_json_doc({"estimates": reports}), args.out)
    return EXIT_OK


def _quadrature_config(spec: ProblemSpec, args, box) -> OracleConfig:
    radii = spec.quadrature_radii
    if radii is None:
        outcome = run_solve(spec, probe=False)
        if outcome.dominant is None:
            raise ConfigError(
                "no quadrature radii given and no critical points to derive them from"
            )
        radii = (0.5 * outcome.dominant.modulus_p, 0.5 * outcome.dominant.modulus_q)
    grid = (args.grid, args.grid) if args.grid else spec.quadrature_grid
    return OracleConfig(
        box=box, beta=spec.beta, quadrature_radii=radii, quadrature_grid=grid
    )


def cmd_oracle(spec: ProblemSpec, args) -> int:
    box = spec.effective_box()
    table = coeff_recurrence(spec.H, spec.G, spec.beta, box)
    if not args.quadrature:
        _emit(table_to_csv(table), args.out)
        return EXIT_OK
    cfg = _quadrature_config(spec, args, box)
    numeric = quadrature_values(spec.H, spec.G, spec.beta, cfg)
    lines = [f"# prefactor: {table.prefactor}"]
    lines.append("r,s,numerator,denominator,value,quad_real,quad_imag,quad_error")
    worst = 0.0
    R, S = box
    for r in range(R + 1):
        for s in range(S + 1):
            c = table.series.coeffs[r][s]
            exact = table.value(r, s)
            z = complex(numeric.values[r, s])
            if c != 0:
                worst = max(worst, float(abs(z - complex(exact)) / abs(complex(exact))))
            lines.append(
                f"{r},{s},{c.numerator},{c.denominator},{mp.nstr(mpf(exact), 17)},"
                f"{z.real:.17g},{z.imag:.17g},{numeric.entry_error(r, s):.3e}"
            )
    lines.append(f"# max_relative_discrepancy: {worst:.3e}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_compare(spec: ProblemSpec, args) -> int:
    box = spec.effective_box()
    for r, s in spec.targets:
        if r > box[0] or s > box[1]:
            raise ConfigError(f"oracle box {box} too small for target ({r},{s})")
    outcome = run_solve(spec)
    if outcome.dominant is None or not any(pt.smooth for pt in outcome.dominant.points):
        sys.stderr.write("no smooth critical point on the dominant torus\n")
        return EXIT_NO_CRITICAL_POINT
    table = coeff_recurrence(spec.H, spec.G, spec.beta, box)
    lines = ["r,s,estimate_log10,estimate,exact_log10,exact,ratio"]
    ln10 = mp.log(10)
    for r, s in spec.targets:
        exact_log10 = table.log10_abs(r, s)
        exact_str = mp.nstr(mpf(table.value(r, s)), 17)
        exact_log10_str = (
            mp.nstr(exact_log10, 17) if exact_log10 != mp.ninf else "-inf"
        )
        if r == 0 or s == 0:
            lines.append(f"{r},{s},n/a,n/a,{exact_log10_str},{exact_str},n/a")
            continue
        est = estimate_target(spec, outcome, r, s)
        ratio = mp.exp((est.log10_modulus - exact_log10) * ln10)
        lines.append(
            f"{r},{s},{mp.nstr(est.log10_modulus, 17)},"
            f"{mp.nstr(abs(est.value), 17)},"
            f"{exact_log10_str},{exact_str},{mp.nstr(ratio, 17)}"
        )
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


_COMMANDS = {
    "solve": cmd_solve,
    "estimate": cmd_estimate,
    "oracle": cmd_oracle,
    "compare": cmd_compare,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.precision:
            set_precision(args.precision)
        spec = _load_spec(args)
        if args.dump_spec:
            _emit(dump_problem(spec), args.out)
            return EXIT_OK
        return _COMMANDS[args.command](spec, args)
    except SpecFileError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except HypothesisFailure as exc:
        sys.stderr.write(f"error: hypothesis '{exc.name}' failed: {exc}\n")
        return EXIT_NUMERICAL
    except BivasymError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NUMERICAL
    except np.linalg.LinAlgError as exc:
        sys.stderr.write(f"error: linear algebra failure: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
