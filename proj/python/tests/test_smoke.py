import json
import os
import pathlib

import pytest

import fusionlab

SCHEMA = pathlib.Path(
    os.environ.get(
        "FUSIONLAB_SCHEMA",
        pathlib.Path(__file__).resolve().parents[2] / "schema" / "fusionlab-report.v1.schema.json",
    )
)

COMMANDS = [
    ["validate", "--ring", "fibonacci"],
    ["multiply", "--ring", "tl:3", "a1", "a1"],
    ["moments", "--ring", "int", "--moment-order", "6", "g+g^-1"],
    ["norm", "--ring", "tl:3", "--ball-radius", "10", "a1"],
    ["kesten", "--ring", "int", "--ball-radius", "50"],
    ["cp-check", "--ring", "fibonacci", '{"support": {"1": 1, "tau": -1.2}}'],
    ["anorm", "--ring", "int", "--restarts", "1", "--iters", "50", "fejer:2"],
    ["leptin", "--ring", "int", "--restarts", "1", "--net", "fejer:2", "--net", "fejer:4", "--test", "delta:1"],
    ["walk", "--ring", "tl:3", "--gen", "a1", "--steps", "3", "--trials", "500", "--seed", "1"],
    ["catalog"],
]


def test_arithmetic():
    assert fusionlab.multiply("fibonacci", "tau", "tau") == "1 + tau"
    assert fusionlab.moments("tl:3", "a1", 8) == ["1", "0", "1", "0", "2", "0", "5", "0", "14"]
    assert fusionlab.validate("ising", 3)


def test_norm_and_walk():
    b = fusionlab.norm_bounds("fibonacci", "tau")
    assert b["lower"] == pytest.approx((1 + 5**0.5) / 2)
    assert b["lower"] <= b["heuristic"] <= b["upper"]
    assert fusionlab.walk_distribution("tl:3", "a1", 2) == {"a0": "1/9", "a2": "8/9"}


def test_errors():
    with pytest.raises(fusionlab.InputError):
        fusionlab.moments("nonsense", "x", 2)
    with pytest.raises(ValueError):
        fusionlab.report("norm", "--ring", "tl:3", "bogus")
    code, out, err = fusionlab.run(["frobnicate"])
    assert code == 2 and out == "" and err


@pytest.mark.parametrize("args", COMMANDS, ids=lambda a: a[0])
def test_reports_match_schema(args):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(SCHEMA.read_text())
    doc = fusionlab.report(*args)
    jsonschema.validate(doc, schema)
    assert doc["command"] == args[0]


def test_schema_rejects_bare_numbers():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(SCHEMA.read_text())
    doc = fusionlab.report("norm", "--ring", "fibonacci", "tau")
    doc["result"]["lower"] = 1.618
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(doc, schema)
