"""
Tests for `kugacert kodaira`.
"""

import json

from kugacert.cli import cli


def test_zero_verdict(runner):
    result = runner.invoke(cli, ["kodaira", "--g", "2", "--n", "7"])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[1] == "kappa = 0"
    assert lines[2].startswith("  - s_min(2) = 10 = 10")


def test_general_type_json(runner):
    result = runner.invoke(cli, ["--json", "kodaira", "--g", "4", "--n", "4"])
    assert result.exit_code == 0
    verdict = json.loads(result.stdout)["result"]
    assert verdict["kind"] == "GeneralType"
    assert verdict["dimension"] == 10


def test_n_zero_is_flagged(runner):
    result = runner.invoke(cli, ["kodaira", "--g", "3", "--n", "0"])
    assert result.exit_code == 0
    assert "informational" in result.stdout


def test_undecidable_exits_3(runner):
    result = runner.invoke(cli, ["kodaira", "--g", "6", "--n", "0"])
    assert result.exit_code == 3
    assert result.stderr.startswith("Error: ")


def test_invalid_genus_exits_2(runner):
    result = runner.invoke(cli, ["kodaira", "--g", "0", "--n", "1"])
    assert result.exit_code == 2


def test_table(runner):
    result = runner.invoke(cli, ["kodaira", "--table", "2", "8"])
    assert result.exit_code == 0
    rows = result.stdout.splitlines()[2:]
    assert rows[0].split() == ["1"] + ["-inf"] * 8
    assert rows[1].split() == ["2"] + ["-inf"] * 6 + ["0", "3"]


def test_table_out_of_range_exits_3(runner):
    result = runner.invoke(cli, ["kodaira", "--table", "10", "1"])
    assert result.exit_code == 3


def test_needs_g_and_n(runner):
    assert runner.invoke(cli, ["kodaira", "--g", "2"]).exit_code == 2
    assert runner.invoke(cli, ["kodaira", "--g", "2", "--n", "1", "--table", "2", "2"]).exit_code == 2
