import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from gonality.cli import dumps, main, parse_field, parse_group, render_text
from gonality.errors import ParseError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("spec, factors", [("Z/47", (47,)), ("Z/9 + Z/3", (9, 3)), ("9+3", (9, 3)), (" Z / 6 ", (6,))])
def test_parse_group(spec, factors):
    assert parse_group(spec).invariant_factors == factors


@pytest.mark.parametrize("spec", ["Z/1", "Z/", "Z/3 +", "Z/x", "", "Z/3 * Z/3"])
def test_parse_group_errors(spec):
    with pytest.raises(ParseError):
        parse_group(spec)


def test_parse_group_reports_position():
    with pytest.raises(ParseError) as info:
        parse_group("Z/3 + Z/1")
    assert info.value.position == 8


@given(st.lists(st.integers(2, 10**6), min_size=1, max_size=4))
def test_parse_group_round_trip(factors):
    spec = " + ".join(f"Z/{k}" for k in factors)
    assert str(parse_group(spec)) == spec


@pytest.mark.parametrize("spec, n", [("Q", 1), ("Q(zeta_8)", 8), ("Q(zeta_1)", 1)])
def test_parse_field(spec, n):
    assert parse_field(spec).n == n


@pytest.mark.parametrize("spec", ["Q(zeta_0)", "R", "Q(sqrt 2)", "F_7"])
def test_parse_field_errors(spec):
    with pytest.raises(ParseError):
        parse_field(spec)


def test_bound_json(capsys):
    code, out, _ = run(capsys, "bound", "--group", "Z/13", "--field", "Q", "--output", "json")
    assert code == 0
    data = json.loads(out)
    assert data["reported_bound"] == "1" and data["schema_version"] == "1"
    assert data["summands"][0]["search"]["witness_norm"] == "13"


def test_json_round_trip_is_byte_identical(capsys):
    _, out, _ = run(capsys, "bound", "--group", "Z/47", "--output", "json")
    assert json.dumps(json.loads(out), sort_keys=True, indent=2) + "\n" == out
    assert "not a proof" in out


def test_text_and_json_carry_the_same_numbers(capsys):
    _, js, _ = run(capsys, "bound", "--group", "Z/9 + Z/3", "--output", "json")
    _, text, _ = run(capsys, "bound", "--group", "Z/9 + Z/3")
    assert render_text(json.loads(js)) == text


def test_hypothesis_violation_exit(capsys):
    code, out, err = run(capsys, "bound", "--group", "Z/16", "--field", "Q")
    assert code == 2
    assert "s = 16" in err and "non-cyclic" in err


def test_budget_exit(capsys):
    code, out, err = run(capsys, "bound", "--group", "Z/47", "--budget", "10", "--output", "json")
    assert code == 3
    data = json.loads(out)
    assert data["certified"] is False and data["complete"] is False
    assert "budget" in err


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("GONALITY_BUDGET", "5")
    code, _, _ = run(capsys, "summand", "--s", "47")
    assert code == 3


@pytest.mark.parametrize("argv", [["bound", "--group", "Z/1"], ["bound"], ["nope"], ["bound", "--group", "Z/3", "--radius", "0"]])
def test_parse_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith("error:")


def test_missing_class_number_exit_1(capsys, tmp_path):
    table = tmp_path / "h.txt"
    table.write_text("# empty\n")
    code, _, err = run(capsys, "bound", "--group", "Z/23", "--class-numbers", str(table))
    assert code == 1 and "zeta_22" in err


def test_class_numbers_are_reported(capsys, tmp_path):
    table = tmp_path / "h.txt"
    table.write_text("22 1\n")
    code, out, _ = run(capsys, "bound", "--group", "Z/23", "--class-numbers", str(table), "--output", "json")
    data = json.loads(out)
    assert code == 0
    assert data["formulas"]["class_number_bound[s=23]"]["value"] == "1"
    assert data["class_number_source"] == str(table)


def test_fischer(capsys):
    code, out, _ = run(capsys, "fischer", "--group", "Z/6", "--output", "json")
    data = json.loads(out)
    assert code == 0 and data["index"] == "6" and data["rows_map_to_identity"] is True


def test_primroot_and_ideal(capsys):
    _, out, _ = run(capsys, "primroot", "--p", "47", "--output", "json")
    assert json.loads(out)["root"] == "-2"
    _, out, _ = run(capsys, "ideal", "--m", "28", "--l", "29", "--t", "2", "--search", "--output", "json")
    data = json.loads(out)
    assert data["norm"] == "29" and data["search"]["best_index"] == "1"


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--limit", "30", "--summands", "--output", "json")
    rows = json.loads(out)["rows"]
    assert code == 0 and [r["p"] for r in rows][:3] == ["3", "5", "7"]
    assert all(r["best_index"] == "1" for r in rows)


def test_cite(capsys):
    _, out, _ = run(capsys, "bound", "--group", "Z/5", "--cite")
    assert "field_map:" in out and "product_bound" in out


def test_dumps_big_integers_as_strings():
    assert json.loads(dumps({"x": 2**100}))["x"] == str(2**100)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gonality.cli", "bound", "--group", "Z/5", "--output", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["reported_bound"] == "1"
