import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from bialgebras import schema
from bialgebras.cli import LambdaSyntaxError, main, parse_lambda, parse_partition
from bialgebras.partition import Lambda, Partition
from bialgebras.poly import TensorPoly


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_fdb_coproduct_json(capsys):
    status, out, _ = run(capsys, "fdb-coproduct", "3")
    assert status == 0
    data = json.loads(out)
    jsonschema.validate(data, schema.TENSOR)
    assert len(data) == 3
    t = TensorPoly.from_json(data)
    assert t.to_str(fdb=True) == "A1^3 ⊗ A3 + 3 A1 A2 ⊗ A2 + A3 ⊗ A1"


def test_fdb_coproduct_text_and_csv(capsys):
    _, out, _ = run(capsys, "fdb-coproduct", "3", "--format", "text")
    assert out == "A1^3 ⊗ A3 + 3 A1 A2 ⊗ A2 + A3 ⊗ A1\n"
    _, out, _ = run(capsys, "fdb-coproduct", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["left-monomial", "right-monomial", "numerator", "denominator"]
    assert len(rows) == 4
    assert ["A1 A2", "A2", "3", "1"] in rows


def test_transversals_of_top_on_two_points(capsys):
    status, out, _ = run(capsys, "transversals", "--sigma", "[[0,1]]")
    assert status == 0
    data = json.loads(out)
    jsonschema.validate(data, schema.TRANSVERSALS)
    assert data["labeled_count"] == 2
    assert data["iso_class_count"] == 2


def test_transversals_of_bottom_on_three_points(capsys):
    _, out, _ = run(capsys, "transversals", "--sigma", "[[0],[1],[2]]")
    data = json.loads(out)
    assert data["labeled_count"] == 5
    # tau up to symmetry of sigma: bottom, one pair, top
    assert data["iso_class_count"] == 3
    assert sum(c["orbit_size"] for c in data["iso_classes"]) == 5


def test_cycle_index_prints_the_computed_sum(capsys):
    status, out, _ = run(capsys, "cycle-index", "pi", "3", "--format", "text")
    assert status == 0
    assert out == "5x1^3 + 9x1x2 + 4x3\n"
    _, out, _ = run(capsys, "cycle-index", "pi", "3")
    data = json.loads(out)
    jsonschema.validate(data, schema.CYCLE_INDEX)
    coeffs = {json.dumps(t["monomial"]): t["coeff"] for t in data["series_coefficients"]}
    assert coeffs['{"1": 3}'] == "5/6"


def test_pleth_coproduct(capsys):
    _, out, _ = run(capsys, "pleth-coproduct", "{2:1}", "--format", "text")
    assert out == "A[x1] ⊗ A[x2] + A[x2] ⊗ A[x1]\n"
    _, a, _ = run(capsys, "pleth-coproduct", "{1:1,2:1}")
    _, b, _ = run(capsys, "pleth-coproduct", "[[0],[1,2]]")
    assert a == b
    jsonschema.validate(json.loads(a), schema.TENSOR)


def test_bell(capsys):
    _, out, _ = run(capsys, "bell", "4", "2", "--format", "text")
    assert out == "4 A1 A3 + 3 A2^2\n"
    _, out, _ = run(capsys, "bell", "4", "2")
    jsonschema.validate(json.loads(out), schema.POLY)


def test_segal_check(capsys):
    status, out, _ = run(capsys, "segal-check", "--bound", "4")
    assert status == 0
    data = json.loads(out)
    jsonschema.validate(data, schema.SEGAL)
    assert data["NS"]["passed"] and data["TS"]["passed"]


def test_duality_check(capsys):
    status, out, _ = run(capsys, "duality-check", "--kind", "both", "--max-n", "4", "--max-weight", "3", "--trials", "3")
    assert status == 0
    data = json.loads(out)
    jsonschema.validate(data, schema.DUALITY)
    assert all(r["passed"] == r["trials"] for r in data["results"])


def test_out_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    status, out, _ = run(capsys, "fdb-coproduct", "2", "--out", str(target))
    assert status == 0 and out == ""
    assert len(json.loads(target.read_text())) == 2


def test_bound_error(capsys):
    status, out, err = run(capsys, "fdb-coproduct", "9")
    assert status == 2 and out == ""
    data = json.loads(err)
    jsonschema.validate(data, schema.ERROR)
    assert data["error"] == "bound-exceeded"
    assert data["limit"] == 8
    assert "8" in data["message"]


def test_bound_error_respects_configured_limit(capsys):
    status, _, err = run(capsys, "pleth-coproduct", "{4:1}", "--max-weight", "3")
    assert status == 2
    assert json.loads(err)["limit"] == 3
    status, _, err = run(capsys, "segal-check", "--bound", "9")
    assert status == 2 and json.loads(err)["error"] == "bound-exceeded"


@pytest.mark.parametrize("text,pos", [("{2:1,", 5), ("{2;1}", 2), ("[[0,1],[1]]", 8), ("2:1", 0), ("{0:1}", 1)])
def test_lambda_parse_errors(capsys, text, pos):
    with pytest.raises(LambdaSyntaxError) as err:
        parse_lambda(text)
    assert err.value.extra["position"] == pos
    status, _, errtext = run(capsys, "pleth-coproduct", text)
    assert status == 2
    data = json.loads(errtext)
    jsonschema.validate(data, schema.ERROR)
    assert data["error"] == "parse-error" and data["position"] == pos


def test_parse_literals():
    assert parse_lambda("{2:1, 3:1}") == Lambda.from_dict({2: 1, 3: 1})
    assert parse_lambda("[[0,1],[2]]") == Lambda.from_dict({1: 1, 2: 1})
    assert parse_partition("[[2],[0,1]]") == Partition((0, 0, 1))
    with pytest.raises(LambdaSyntaxError):
        parse_partition("[[0],[2]]")


def test_invalid_argument(capsys):
    status, _, err = run(capsys, "bell", "3", "4")
    assert status == 2 and json.loads(err)["error"] == "invalid-argument"
    status, _, err = run(capsys, "cycle-index", "trees", "3")
    assert status == 2 and json.loads(err)["error"] == "invalid-argument"


def test_output_is_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "bialgebras.cli", "duality-check", "--kind", "pleth", "--lambda", "{1:1,2:1}", "--trials", "4"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
    jsonschema.validate(json.loads(first), schema.DUALITY)
