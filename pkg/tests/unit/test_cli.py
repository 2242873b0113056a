import json
from fractions import Fraction

import pytest
from typer.testing import CliRunner

from freeness_bounds.cli.main import build_app
from freeness_bounds.cli.output import EXIT_CERTIFICATION, EXIT_OK, EXIT_USAGE, int_list
from freeness_bounds.suites import CheckContext

runner = CliRunner()


def invoke(*args: str):
    return runner.invoke(build_app(), list(args))


def test_int_list():
    assert int_list("1,2") == [1, 2]
    assert int_list("2..5") == [2, 3, 4, 5]
    assert int_list(" 3 ") == [3]


def test_table_json():
    result = invoke("table", "--n-max", "3", "--r", "1", "--format", "json")
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.stdout)
    assert data["schema_version"] == "1"
    assert [cell["floor_F"] for cell in data["cells"]] == [2, 3]


def test_table_csv():
    result = invoke("table", "--n-max", "2", "--r", "1", "--format", "csv")
    assert result.exit_code == EXIT_OK, result.output
    assert result.stdout.splitlines() == [
        "n,r,floor_F,exact_value,witness_b,witness_d",
        "2,1,2,2,[2],[2]",
    ]


def test_table_to_file(tmp_path):
    target = tmp_path / "table.csv"
    result = invoke("table", "--n-max", "4", "--r", "1,2", "--format", "csv", "-o", str(target))
    assert result.exit_code == EXIT_OK, result.output
    rows = target.read_text().splitlines()
    assert len(rows) == 1 + 6
    assert rows[-1].startswith("4,2,6,")


def test_table_precision_keeps_cells():
    coarse = invoke("table", "--n-max", "5", "--r", "1,2", "--precision", "16", "--format", "json")
    default = invoke("table", "--n-max", "5", "--r", "1,2", "--format", "json")
    assert coarse.exit_code == default.exit_code == EXIT_OK, coarse.output
    assert json.loads(coarse.stdout) == json.loads(default.stdout)


def test_output_is_idempotent(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for target in (first, second):
        invoke("table", "--n-max", "5", "--r", "2", "--format", "json", "-o", str(target))
    assert first.read_bytes() == second.read_bytes()


@pytest.mark.parametrize(
    "args",
    (
        ("table", "--n-max", "41"),
        ("table", "--n-max", "1"),
        ("table", "--n-max", "3", "--format", "xml"),
        ("table", "--n-max", "3", "--r", "0"),
        ("table", "--n-max", "3", "--precision", "8"),
        ("solve-f", "--n", "61"),
        ("solve-f", "--n", "3", "--precision", "8"),
        ("solve-g", "--n", "9"),
        ("bounds", "--n", "1", "--r", "1"),
        ("bounds", "--r", "1"),
        ("verify", "nope"),
        ("lambertw", "abc"),
    ),
)
def test_usage_errors(args):
    result = invoke(*args)
    assert result.exit_code == EXIT_USAGE, result.output
    assert "error:" in result.output


def test_solve_f():
    result = invoke("solve-f", "--n", "3", "--r", "1", "--format", "json")
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.stdout)
    assert data["function"] == "F"
    assert data["value"] == "2 + 1 * 2^(1/2)"
    assert data["floor"] == 3
    assert data["witness"] == "b=[3,1]; d=[3,2]"
    lo, hi = Fraction(data["lo"]), Fraction(data["hi"])
    assert Fraction("3.4142135") < lo <= hi < Fraction("3.4142136")


def test_solve_g():
    result = invoke("solve-g", "--n", "6", "--format", "json")
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.stdout)
    assert data["function"] == "G"
    assert data["floor"] == 7
    assert [case["name"] for case in data["cases"]] == ["integral", "nonintegral"]


def test_bounds():
    result = invoke("bounds", "--n", "6", "--r", "1", "--format", "json")
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.stdout)
    assert data["F_floor"] == 8
    rows = {row["bound_name"]: row for row in data["rows"]}
    assert rows["loglog_thm"]["dominates_F"] == "true"
    assert rows["young_sum"]["exact_part"] == "21"
    assert rows["enlogn_sum"]["exact_part"] == ""
    assert data["construction"] is None


def test_bounds_with_construction():
    result = invoke("bounds", "--n", "110", "--r", "1", "--with-construction", "--format", "json")
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.stdout)
    assert data["F_floor"] is None
    construction = data["construction"]
    assert construction["valid"] and construction["gap_two"]
    assert construction["holds"] == "true"
    assert construction["chain"].startswith("b=[110,11,10,")
    rows = {row["bound_name"]: row for row in data["rows"]}
    assert rows["construction_lower"]["dominates_F"] == ""


def test_bounds_sweep():
    result = invoke("bounds", "--sweep", "2..4", "--r", "1", "--format", "csv")
    assert result.exit_code == EXIT_OK, result.output
    lines = result.stdout.splitlines()
    assert lines[0] == "n,r,young_sum,enlogn_sum,loglog_thm,easy_lower,F"
    assert [line.split(",")[0] for line in lines[1:]] == ["2", "3", "4"]


def test_lambertw():
    result = invoke("lambertw", "e", "--format", "json")
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.stdout)
    assert Fraction(data["lo"]) <= 1 <= Fraction(data["hi"])
    result = invoke("lambertw", "1/10", "--precision", "128", "--format", "json")
    assert result.exit_code == EXIT_OK, result.output
    assert json.loads(result.stdout)["precision"] == 128


def test_verify():
    result = invoke("verify", "sixfold", "--format", "csv")
    assert result.exit_code == EXIT_OK, result.output
    rows = result.stdout.splitlines()[1:]
    assert len(rows) == 2
    assert all(",true," in row for row in rows)


def test_verify_failure(monkeypatch):
    def failing_check(ctx: CheckContext) -> str:
        raise AssertionError("boom")

    monkeypatch.setattr("freeness_bounds.runner.collect_checks", lambda suite: [failing_check])
    result = invoke("verify", "oracle", "--format", "json")
    assert result.exit_code == EXIT_CERTIFICATION
    assert "failed:" in result.output
    assert '"passed": false' in result.output
