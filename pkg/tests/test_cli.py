import io
import json

import jsonschema
import pytest

from smithalg.cli import REPORT_SCHEMA, Report, run


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_bfunction_det2():
    code, out, _ = invoke("bfunction", "det2", "--max-power", "4")
    assert code == 0
    assert "b = [1, 3, 6, 10, 15]" in out


def test_bfunction_json_values():
    code, out, _ = invoke("--format", "json", "bfunction", "quad2", "--max-power", "4")
    data = json.loads(out)
    assert data["values"]["b"] == ["1", "4", "9", "16", "25"]


def test_normalform():
    code, out, _ = invoke("normalform", "--u", "t", "--n", "1", "--expr", "y*x")
    assert code == 0
    assert "normal_form = e + 1" in out


def test_normalform_smith():
    code, out, _ = invoke("normalform", "--f", "t + 1", "--n", "2", "--expr", "y*x - x*y")
    assert code == 0
    assert "normal_form = e + 1" in out


def test_normalform_needs_one_polynomial():
    assert invoke("normalform", "--n", "1", "--expr", "x")[0] == 2
    assert invoke("normalform", "--u", "t", "--f", "t", "--n", "1", "--expr", "x")[0] == 2


def test_verify_rank1_passes():
    code, out, _ = invoke("verify", "rank1")
    assert code == 0
    assert "result: all checks passed" in out


def test_unknown_space_is_usage_error():
    code, _, err = invoke("verify", "nope")
    assert code == 2
    assert "rank1" in err


def test_parse_failure_is_usage_error():
    code, _, err = invoke("radial", "quad2", "--expr", "X**")
    assert code == 2
    assert "offset 2" in err


def test_bad_flag_is_usage_error(capsys):
    assert invoke("verify")[0] == 2
    assert invoke("igusa", "quad2", "--depth", "zero")[0] == 2


def test_radial_and_ufunction():
    code, out, _ = invoke("radial", "quad2", "--expr", "Y*X - X*Y")
    assert code == 0 and "radial = e + 1" in out
    code, out, _ = invoke("ufunction", "det3")
    assert code == 0 and "u = 1/162*t^3 + 1/18*t^2 + 1/9*t" in out


def test_igusa_and_spaces():
    code, out, _ = invoke("igusa", "quad2", "--depth", "3")
    assert code == 0 and "dims = [2, 3, 3]" in out
    code, out, _ = invoke("spaces")
    assert code == 0 and "pfaff4" in out


def test_failure_exit_code(tmp_path):
    path = tmp_path / "naive.space"
    path.write_text("name = naive\nvars = a, b, c\ndelta = a*c - b^2\n")
    code, out, _ = invoke("verify", str(path))
    assert code == 1
    assert "FAIL b_proportionality" in out


@pytest.mark.parametrize("argv", [
    ("verify", "det2"),
    ("bfunction", "pfaff4"),
    ("radial", "det2", "--expr", "Y^2*X"),
    ("normalform", "--u", "1/4*t^2", "--n", "2", "--expr", "y*x*y"),
    ("igusa", "rank1", "--depth", "2"),
])
def test_json_schema_and_roundtrip(argv):
    code, out, _ = invoke("--format", "json", *argv)
    data = json.loads(out)
    jsonschema.validate(data, REPORT_SCHEMA)
    assert Report.from_dict(data).to_dict() == data


def test_text_and_json_agree():
    _, text, _ = invoke("verify", "quad2")
    _, js, _ = invoke("verify", "quad2", "--format", "json")
    data = json.loads(js)
    for check in data["checks"]:
        assert f"{check['status'].upper():4} {check['name']}" in text


def test_determinism():
    assert invoke("verify", "sym2") == invoke("verify", "sym2")


def test_timing_and_out(tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = invoke("--format", "json", "--timing", "--out", str(target), "verify", "rank1")
    assert code == 0
    assert target.read_text() == out
    assert isinstance(json.loads(out)["elapsed_ms"], float)
