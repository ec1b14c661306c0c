import csv
import io
import json
import subprocess
import sys

import pytest

from thickfourier.cli import canonical_json, parse_range, run_command
from thickfourier.distributions import ThickDistribution, pf_power, thick_delta
from thickfourier.sphere import AngularFunction, sample_harmonic


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_range():
    assert parse_range("0..2") == [0, 1, 2]
    assert parse_range("-3..-2") == [-3, -2]
    assert parse_range("4") == [4]


def test_kappa_table():
    code, out, _ = run(["kappa-table", "--n", "3", "--beta", "-2", "--m", "0..2"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "beta", "m", "exact", "value_repr", "float_value"]
    assert rows[1][:5] == ["3", "-2", "0", "exact", "4π"]
    assert rows[1][5].startswith("12.566")
    assert len(rows) == 4


def test_kappa_table_json_and_precision(monkeypatch):
    monkeypatch.setenv("THICKFOURIER_PRECISION", "25")
    code, out, _ = run(["kappa-table", "--beta", "0", "--m", "0", "--format", "json"])
    assert code == 0
    (row,) = json.loads(out)
    assert row["float_value"].startswith("5.3128646447927")
    assert len(row["float_value"].replace(".", "")) >= 20


def test_lambda_table():
    code, out, _ = run(["lambda-table", "--n", "3", "--q", "0", "--m", "0"])
    assert code == 0
    assert "-4π" in out


def test_generator():
    code, out, _ = run(["generator", "--n", "3", "--lambda", "-3"])
    assert code == 0
    assert json.loads(out) == {"atom": "DeltaLnInf", "q": 0}
    assert out.strip() == '{"atom":"DeltaLnInf","q":0}'


def test_domain_error_exit_code():
    code, _, err = run(["kappa-table", "--n", "3", "--beta", "-5", "--m", "0"])
    assert code == 2
    assert "PoleInGamma" in err


def test_usage_errors():
    assert run(["bogus"])[0] == 1
    assert run(["kappa-table", "--n", "1", "--beta", "0"])[0] == 1
    assert run(["verify", "--tol", "-1"])[0] == 1
    assert run(["kappa-table"])[0] == 1


def test_verify_exit_codes():
    code, out, _ = run(["verify", "--suite", "hadamard"])
    assert code == 0
    assert out.count("PASS") == 4
    code, out, _ = run(["verify", "--suite", "gaussian", "--tol", "1e-300", "--format", "json"])
    assert code == 3
    assert any(not r["passed"] for r in json.loads(out))


def test_pole_table_command():
    code, out, _ = run(["pole-table", "--n", "3", "--range", "-5..-3"])
    assert code == 0
    table = json.loads(out)
    assert [p["order"] for p in table["poles"]] == [2, 1, 2]


def _atom_file(tmp_path):
    d = ThickDistribution(
        3,
        [
            thick_delta(-2, n=3),
            thick_delta(1, AngularFunction.coordinate(3, 0)),
            thick_delta(-5, AngularFunction.harmonic(sample_harmonic(3, 2))),
            pf_power("-1/2", n=3),
            pf_power("3/2", AngularFunction.coordinate(3, 2)),
        ],
    )
    path = tmp_path / "atoms.json"
    path.write_text(canonical_json(d.to_json()) + "\n")
    return path


def test_ft_round_trip_is_byte_identical(tmp_path):
    src = _atom_file(tmp_path)
    mid, back = tmp_path / "mid.json", tmp_path / "back.json"
    assert run(["ft", "--dir", "star", "--in", str(src), "--out", str(mid), "--strip-provenance"])[0] == 0
    assert run(["ft", "--dir", "upper", "--in", str(mid), "--out", str(back), "--inverse", "--strip-provenance"])[0] == 0
    assert back.read_bytes() == src.read_bytes()


def test_ft_keeps_provenance(tmp_path):
    src = _atom_file(tmp_path)
    code, out, _ = run(["ft", "--dir", "star", "--in", str(src)])
    assert code == 0
    assert all("provenance" in a for a in json.loads(out)["atoms"])


def test_ft_wrong_direction(tmp_path):
    assert run(["ft", "--dir", "upper", "--in", str(_atom_file(tmp_path))])[0] == 1


def test_jet_ft(tmp_path):
    path = tmp_path / "jet.json"
    path.write_text(json.dumps({"kind": "thick_jet", "n": 3, "truncation": -3, "coeffs": {"-3": AngularFunction.constant(3).to_json()}}))
    code, out, _ = run(["jet-ft", "--in", str(path)])
    assert code == 0
    w = json.loads(out)
    assert w["kind"] == "w_jet" and set(w["A"]) == {"0"} and set(w["P"]) == {"0"}
    code, out, _ = run(["jet-ft", "--in", str(path), "--project"])
    assert json.loads(out)["A"] == {}
    code, _, err = run(["jet-ft", "--in", str(path), "--truncation", "-4"])
    assert code == 2 and "TruncationMismatch" in err


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "thickfourier.cli", "generator", "--lambda", "-1/2"], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout) == {"atom": "PfW", "lambda": "-1/2"}
