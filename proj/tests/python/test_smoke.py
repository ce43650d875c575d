# Copyright 2026 The norm2pc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import pathlib

import pytest

norm2pc = pytest.importorskip("norm2pc")

SCHEMA_PATH = (
    pathlib.Path(__file__).resolve().parents[2] / "docs" / "report.schema.json"
)


def test_protocol_listing():
    names = norm2pc.protocols()
    for expected in ("mill", "msb", "abs", "max", "mult", "l1", "l2sq", "linf"):
        assert expected in names


def test_worked_examples():
    assert norm2pc.run("l1", x=[1, 2], y=[4, 0])["output"] == [5]
    assert norm2pc.run("l2sq", x=[0, 3], y=[4, 0])["output"] == [25]
    assert norm2pc.run("linf", x=[1, 9], y=[4, 0])["output"] == [9]
    assert norm2pc.run("adder", x=[5], y=[2])["output"] == [-3]


def test_run_matches_oracle_on_synthetic_instances():
    for protocol in ("msb", "abs", "max", "min", "mult", "l1", "linf"):
        for bits in (16, 32):
            got = norm2pc.run(protocol, bits=bits, dim=9, seed=5)
            want = norm2pc.oracle(protocol, bits=bits, dim=9, seed=5)
            assert got["output"] == want, protocol


def test_report_contract():
    res = norm2pc.run("linf", dim=16, seed=3)
    report = res["report"]
    assert report["protocol"] == "linf"
    assert report["params"]["n"] == 16
    assert report["params"]["ell"] == 32
    assert report["measured_bits"] > 0
    assert report["rounds"] > 0
    assert report["backend"] == "dealer"
    assert all(check["pass"] for check in report["bound_checks"])
    assert report["blocks"].get("mill", 0) > 0


def test_report_validates_against_schema():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(SCHEMA_PATH.read_text())
    report = norm2pc.run("l1", dim=4)["report"]
    jsonschema.validate(report, schema)
    report = norm2pc.run("mult", dim=2, backend="iknp")["report"]
    jsonschema.validate(report, schema)


def test_predict_matches_measured():
    report = norm2pc.run("l1", dim=32)["report"]
    predicted = norm2pc.predict("l1", bits=32, n=32)
    assert report["measured_bits"] == predicted["schedule_bits"]
    assert predicted["schedule_bits"] <= predicted["analytic_bits"]


def test_iknp_backend_agrees():
    a = norm2pc.run("abs", dim=8, seed=11, backend="dealer")
    b = norm2pc.run("abs", dim=8, seed=11, backend="iknp")
    assert a["output"] == b["output"]


def test_mux_selectors():
    out = norm2pc.run("gen_mux", x=[10, 20], y=[30, 40], sel=[1, 0])["output"]
    assert out == [10, 40]


def test_l2_needs_provider():
    with pytest.raises(norm2pc.UnsupportedError):
        norm2pc.run("l2", dim=2)
    res = norm2pc.run("l2", x=[0, 3], y=[4, 0], debug_sqrt=True)
    assert res["output"] == [5]


def test_usage_errors():
    with pytest.raises(norm2pc.UsageError):
        norm2pc.run("no_such_protocol")
    with pytest.raises(norm2pc.UsageError):
        norm2pc.run("l1", bits=13)
