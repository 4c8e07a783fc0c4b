"""CLI surface: subcommands, formats, exit codes, determinism."""

import json

import pytest

from falsetheta import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_coeffs_alpha_rows(capsys):
    code, out = run_cli(capsys, "coeffs", "--j", "0", "--n", "12")
    assert code == 0
    values = [json.loads(line)["value"] for line in out.strip().splitlines()]
    assert values == ["-1", "0", "1", "1", "4", "4", "9", "11", "19", "23", "37", "44"]
    assert all(json.loads(line)["decomposition_ok"] for line in out.strip().splitlines())


def test_coeffs_podeu(capsys):
    code, out = run_cli(capsys, "coeffs", "--podeu", "--n", "10")
    assert code == 0
    values = [json.loads(line)["value"] for line in out.strip().splitlines()]
    assert values == ["1", "1", "1", "2", "3", "3", "4", "5", "8", "8"]


def test_coeffs_single_row(capsys):
    code, out = run_cli(capsys, "coeffs", "--j", "1", "--n", "1")
    assert code == 0
    rows = out.strip().splitlines()
    assert len(rows) == 1 and json.loads(rows[0])["value"] == "1"


def test_coeffs_d_csv(capsys):
    code, out = run_cli(capsys, "coeffs", "--kind", "d", "--j", "0", "--n", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "j,n_numerator,n_denominator,value"
    assert "0,1,48,-1" in lines


def test_asymptotic_csv_header(capsys):
    code, out = run_cli(capsys, "asymptotic", "--j", "1", "--n", "9",
                        "--exact", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "j,n,exact,main_sum,residual,n34_ratio"
    fields = lines[1].split(",")
    assert fields[0] == "1" and fields[2] == "92"


def test_asymptotic_scan_records(capsys):
    code, out = run_cli(capsys, "asymptotic", "--j", "2", "--scan", "9:16:2", "--exact")
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert [row["n"] for row in rows] == [9, 16]
    assert all("n34_ratio" in row for row in rows)


def test_kernel_table_csv(capsys):
    code, out = run_cli(capsys, "kernel-table")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "j,r,value,closed_form_string,rel_error_vs_table"
    assert len(lines) == 16
    first = lines[1].split(",")
    assert first[:2] == ["0", "0"] and first[3] == "0*pi^2" and float(first[4]) == 0.0


def test_multiplier_json(capsys):
    code, out = run_cli(capsys, "multiplier", "0", "-1", "1", "0")
    assert code == 0
    payload = json.loads(out)
    assert float(payload["unitarity_defect"]) < 1e-12
    assert abs(float(payload["entries"][2][2][0])) < 1e-15


def test_exact_pn(capsys):
    code, out = run_cli(capsys, "exact-pn", "--n", "30")
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert len(rows) == 30 and all(row["rounds_exactly"] for row in rows)
    assert rows[4] == {"n": 5, "p": "7", "series": rows[4]["series"], "rounds_exactly": True}


def test_validation_exit_codes(capsys):
    code, _ = run_cli(capsys, "asymptotic", "--scan", "1:2")
    assert code == cli.EXIT_VALIDATION
    code, _ = run_cli(capsys, "verify", "--only", "bogus")
    assert code == cli.EXIT_VALIDATION


def test_argparse_rejects_unknown_kind():
    with pytest.raises(SystemExit) as info:
        cli.main(["coeffs", "--kind", "bogus"])
    assert info.value.code == 2


def test_float_formatting_is_17_digits(capsys):
    _, out = run_cli(capsys, "kernel-table")
    value = out.strip().splitlines()[2].split(",")[2]
    assert value == "39.478417604357432"


def test_identical_config_identical_bytes(capsys):
    _, first = run_cli(capsys, "coeffs", "--j", "2", "--n", "30", "--format", "csv")
    _, second = run_cli(capsys, "coeffs", "--j", "2", "--n", "30", "--format", "csv")
    assert first == second


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out = run_cli(capsys, "coeffs", "--podeu", "--n", "5", "--output", str(target))
    assert code == 0 and out == ""
    assert len(target.read_text().strip().splitlines()) == 5


def test_verify_fast_group(capsys):
    code, out = run_cli(capsys, "verify", "--only", "generating")
    assert code == 0
    assert "[PASS] generating" in out and "3/3 checks passed" in out
