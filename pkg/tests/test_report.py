import json
import math

import jsonschema
import pytest

from pseudobosons.errors import InvalidInputError
from pseudobosons.report import REPORT_SCHEMA, Check, VerificationReport
from pseudobosons.tolerances import DEFAULT_TOLERANCES, ENV_VAR, load_defaults, merge


def test_check_pass_fail_and_validation():
    assert Check("x", 1e-9, 1e-8).passed
    assert not Check("x", 1e-7, 1e-8).passed
    assert not Check("x", float("nan"), 1.0).passed
    with pytest.raises(ValueError):
        Check("x", -1.0, 1.0)


def test_report_json_is_schema_valid_and_stable():
    r = VerificationReport(params={"dim": 4})
    r.add("b", 0.0, 1e-8)
    r.add("a", math.inf, 1e-8)
    data = json.loads(r.to_json())
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["schema"] == 1
    assert [c["pass"] for c in data["checks"]] == [True, False]
    assert r.to_json() == r.to_json()
    assert not r.passed and [c.name for c in r.failures()] == ["a"]


def test_report_csv_and_lookup():
    r = VerificationReport()
    r.add("ladder_A_phi", 2.5e-12, 1e-8)
    lines = r.to_csv().splitlines()
    assert lines[0] == "name,residual,tolerance,pass"
    assert lines[1] == "ladder_A_phi,2.5e-12,1e-08,True"
    assert r.residual("ladder_A_phi") == 2.5e-12
    with pytest.raises(KeyError):
        r["missing"]


def test_extend_with_prefix():
    a, b = VerificationReport(), VerificationReport()
    b.add("x", 0.0, 1.0)
    a.extend(b, prefix="m/")
    assert a["m/x"].residual == 0.0


def test_defaults_table_and_env(tmp_path):
    assert load_defaults({}) == DEFAULT_TOLERANCES
    path = tmp_path / "d.json"
    path.write_text(json.dumps({"tolerances": {"ladder": 1e-6}}))
    table = load_defaults({ENV_VAR: str(path)})
    assert table["ladder"] == 1e-6 and table["commutator"] == DEFAULT_TOLERANCES["commutator"]
    path.write_text("nope")
    with pytest.raises(InvalidInputError):
        load_defaults({ENV_VAR: str(path)})


@pytest.mark.parametrize("override", [{"bogus": 1.0}, {"ladder": 0.0}, {"ladder": -1e-3}])
def test_merge_rejects(override):
    with pytest.raises(InvalidInputError):
        merge(DEFAULT_TOLERANCES, override)
