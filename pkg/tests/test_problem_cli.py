import json
from fractions import Fraction as F

import pytest

from bivasym import parse_problem, dump_problem
from bivasym.cli import main
from bivasym.errors import SpecFileError

MULTINOMIAL = """{
  "H": [[0, 0, "1"], [1, 0, "-1"], [0, 1, "-1"]],
  "beta": "1/2",
  "direction": "1:1",
  "targets": [[12, 12]],
  "oracle_box": [12, 12],
  "quadrature": {"radii": [0.3, 0.3]}
}
"""

COLOR_SWAP = """{
  "H": [[0, 0, "1"], [1, 0, "-2"], [1, 1, "-2"], [2, 0, "-1"], [2, 1, "2"], [2, 2, "-1"]],
  "G": [[0, 0, "1"], [1, 0, "-1"], [1, 1, "-1"]],
  "beta": "1/2",
  "direction": "2:1",
  "targets": [[10, 5]],
  "oracle_box": [10, 5],
  "quadrature": {"radii": [0.2, 0.8]}
}
"""


@pytest.fixture
def multinomial_spec_file(tmp_path):
    path = tmp_path / "multinomial.json"
    path.write_text(MULTINOMIAL)
    return path


@pytest.fixture
def color_swap_spec_file(tmp_path):
    path = tmp_path / "color_swap.json"
    path.write_text(COLOR_SWAP)
    return path


# ----------------------------------------------------------------------
# Problem files
# ----------------------------------------------------------------------


def test_parse_basic():
    spec = parse_problem(MULTINOMIAL)
    assert spec.beta == F(1, 2)
    assert spec.direction.r0 == 1 and spec.direction.s0 == 1
    assert spec.targets == [(12, 12)]
    assert spec.H.coefficient(1, 0) == -1
    assert spec.quadrature_radii == (0.3, 0.3)


def test_round_trip_identity():
    spec = parse_problem(COLOR_SWAP)
    dumped = dump_problem(spec)
    again = parse_problem(dumped)
    assert again == spec
    assert dump_problem(again) == dumped


def test_parse_error_has_location():
    with pytest.raises(SpecFileError) as info:
        parse_problem('{"H": [[0, 0, "1"],\n  broken\n}')
    assert info.value.line == 2
    assert "line 2" in str(info.value)


def test_decimal_beta_is_exact():
    spec = parse_problem(MULTINOMIAL.replace('"1/2"', '"0.5"'))
    assert spec.beta == F(1, 2)


def test_zero_constant_term_rejected():
    bad = MULTINOMIAL.replace('[0, 0, "1"], ', "")
    with pytest.raises(SpecFileError):
        parse_problem(bad)


def test_constant_h_rejected():
    bad = json.dumps(
        {"H": [[0, 0, "2"]], "beta": "1/2", "direction": "1:1", "targets": []}
    )
    with pytest.raises(SpecFileError):
        parse_problem(bad)


def test_float_coefficient_rejected():
    with pytest.raises(SpecFileError):
        parse_problem('{"H": [[0, 0, "1"], [1, 0, 0.5]], "beta": "1/2", "direction": "1:1"}')


# ----------------------------------------------------------------------
# CLI
# ----------------------------------------------------------------------


def test_solve_exit_zero_and_report(multinomial_spec_file, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["solve", "--spec", str(multinomial_spec_file), "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    pt = doc["critical_points"][0]
    assert pt["minimality"] == "probably_strictly_minimal"
    assert pt["smooth"] is True
    assert float(pt["p"]["re"]) == pytest.approx(0.5, abs=1e-15)


def test_solve_exit_two_without_minimal_point(tmp_path):
    # (1-2x)(1-2y): the lone candidate is non-smooth and non-minimal.
    spec = {
        "H": [[0, 0, "1"], [1, 0, "-2"], [0, 1, "-2"], [1, 1, "4"]],
        "beta": "1/2",
        "direction": "1:1",
        "targets": [],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(spec))
    assert main(["solve", "--spec", str(path)]) == 2


def test_parse_error_exit_64(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["solve", "--spec", str(path)]) == 64
    err = capsys.readouterr().err
    assert "line" in err and "column" in err


def test_constant_h_exit_64(tmp_path):
    path = tmp_path / "const.json"
    path.write_text(
        json.dumps({"H": [[0, 0, "2"]], "beta": "1/2", "direction": "1:1"})
    )
    assert main(["solve", "--spec", str(path)]) == 64


def test_missing_file_exit_64(tmp_path):
    assert main(["solve", "--spec", str(tmp_path / "absent.json")]) == 64


def test_compare_box_too_small_exit_65(tmp_path):
    spec = json.loads(MULTINOMIAL)
    spec["oracle_box"] = [5, 5]
    path = tmp_path / "small.json"
    path.write_text(json.dumps(spec))
    assert main(["compare", "--spec", str(path)]) == 65


def test_estimate_report(multinomial_spec_file, tmp_path):
    out = tmp_path / "est.json"
    assert main(["estimate", "--spec", str(multinomial_spec_file), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    est = doc["estimates"][0]
    assert est["r"] == 12 and est["s"] == 12
    assert est["formula"] == "real-positive"
    assert est["contributions"][0]["winding"] == 0
    assert float(est["value"]["re"]) > 0


def test_estimate_warns_on_drift(tmp_path):
    spec = json.loads(MULTINOMIAL)
    spec["targets"] = [[12, 5]]
    path = tmp_path / "drift.json"
    path.write_text(json.dumps(spec))
    out = tmp_path / "est.json"
    assert main(["estimate", "--spec", str(path), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert any("drift" in w for w in doc["estimates"][0]["warnings"])


def test_oracle_csv(color_swap_spec_file, tmp_path):
    out = tmp_path / "table.csv"
    assert main(["oracle", "--spec", str(color_swap_spec_file), "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "# prefactor: 1"
    assert lines[1] == "r,s,numerator,denominator,value"
    # (0,0) entry of G*H^(-1/2) is 1
    assert lines[2].startswith("0,0,1,1,")


def test_oracle_quadrature_discrepancy(color_swap_spec_file, tmp_path):
    out = tmp_path / "table.csv"
    code = main(
        ["oracle", "--spec", str(color_swap_spec_file), "--quadrature", "--out", str(out)]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[1] == "r,s,numerator,denominator,value,quad_real,quad_imag,quad_error"
    summary = [l for l in lines if l.startswith("# max_relative_discrepancy:")]
    assert len(summary) == 1
    assert float(summary[0].split(":")[1]) < 1e-8


def test_compare_table(color_swap_spec_file, tmp_path):
    out = tmp_path / "cmp.csv"
    assert main(["compare", "--spec", str(color_swap_spec_file), "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "r,s,estimate_log10,estimate,exact_log10,exact,ratio"
    r, s, *_, ratio = lines[1].split(",")
    assert (int(r), int(s)) == (10, 5)
    assert 0.9 < float(ratio) < 1.3


def test_compare_origin_target_na(tmp_path):
    spec = json.loads(MULTINOMIAL)
    spec["targets"] = [[0, 0]]
    spec["oracle_box"] = [2, 2]
    path = tmp_path / "origin.json"
    path.write_text(json.dumps(spec))
    out = tmp_path / "cmp.csv"
    assert main(["compare", "--spec", str(path), "--out", str(out)]) == 0
    line = out.read_text().splitlines()[1]
    fields = line.split(",")
    assert fields[2] == "n/a" and fields[-1] == "n/a"
    assert fields[5] == "1.0"  # exact (0,0) entry of (1-x-y)^(-1/2)


def test_dump_spec_round_trip(color_swap_spec_file, tmp_path):
    out = tmp_path / "dumped.json"
    assert main(["solve", "--spec", str(color_swap_spec_file), "--dump-spec", "--out", str(out)]) == 0
    spec_a = parse_problem(out.read_text())
    spec_b = parse_problem(COLOR_SWAP)
    assert spec_a == spec_b


def test_outputs_deterministic(color_swap_spec_file, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["compare", "--spec", str(color_swap_spec_file), "--out", str(a)]) == 0
    assert main(["compare", "--spec", str(color_swap_spec_file), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_hypothesis_failure_exit_70(tmp_path, capsys):
    spec = json.loads(MULTINOMIAL)
    spec["beta"] = "-1"  # nonpositive integer exponent: formula inapplicable
    path = tmp_path / "badbeta.json"
    path.write_text(json.dumps(spec))
    assert main(["estimate", "--spec", str(path)]) == 70
    assert "beta_not_nonpositive_integer" in capsys.readouterr().err


def test_precision_flag(multinomial_spec_file, tmp_path):
    from bivasym import set_precision

    out = tmp_path / "est.json"
    try:
        code = main(
            [
                "estimate",
                "--spec",
                str(multinomial_spec_file),
                "--precision",
                "192",
                "--out",
                str(out),
            ]
        )
        assert code == 0
    finally:
        set_precision(128)  # restore the default for other tests


def test_oracle_quadrature_default_radii(tmp_path):
    # Without explicit radii the oracle derives them from the dominant
    # critical point (half its moduli).
    spec = json.loads(MULTINOMIAL)
    del spec["quadrature"]
    spec["oracle_box"] = [4, 4]
    spec["targets"] = [[4, 4]]
    path = tmp_path / "noradii.json"
    path.write_text(json.dumps(spec))
    out = tmp_path / "table.csv"
    assert main(["oracle", "--spec", str(path), "--quadrature", "--out", str(out)]) == 0
    summary = [
        l for l in out.read_text().splitlines() if l.startswith("# max_relative")
    ]
    assert float(summary[0].split(":")[1]) < 1e-8
