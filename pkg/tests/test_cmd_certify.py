"""
Tests for `kugacert certify`.
"""

import json

from kugacert.cli import cli
from kugacert.schema import validate_document


def test_fail_names_the_witness(runner):
    result = runner.invoke(cli, ["certify", "--g", "2", "--n", "3", "--gdd", "1"])
    assert result.exit_code == 1
    lines = result.stdout.splitlines()
    assert lines[-1] == "FAIL"
    assert any(
        line.startswith("  witness: g'=1 g''=1 n=3 gamma'=Elliptic(1/6,5/6)") and "certified age 5/6" in line
        for line in lines
    )


def test_pass_writes_certificate(runner, tmp_path):
    out = tmp_path / "cert.json"
    result = runner.invoke(cli, ["certify", "--g", "2", "--n", "4", "--gdd", "1", "--out", str(out)])
    assert result.exit_code == 0
    assert result.stdout.splitlines()[-2] == "PASS"
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["pass"] is True
    assert doc["params"]["gdd"] == [1]
    assert validate_document(doc, "certificate") == []


def test_json_result_is_the_certificate(runner):
    result = runner.invoke(cli, ["--json", "certify", "--g", "5", "--n", "1", "--gdd", "1"])
    assert result.exit_code == 0
    cert = json.loads(result.stdout)["result"]
    assert cert["pass"] is True
    assert cert["scan"]["witness"] is None


def test_unsupported_slice_exits_3(runner):
    result = runner.invoke(cli, ["certify", "--g", "3", "--n", "3", "--gdd", "3"])
    assert result.exit_code == 3
    assert "Error:" in result.stderr


def test_bad_genus_exits_2(runner):
    result = runner.invoke(cli, ["certify", "--g", "1", "--n", "3"])
    assert result.exit_code == 2


def test_required_options(runner):
    assert runner.invoke(cli, ["certify", "--g", "2"]).exit_code == 2
