import json
import subprocess
import sys
from pathlib import Path

import pytest

from eqzeta.cli import run_command
from eqzeta.documents import parse_document, parse_document_file

FIXTURES = Path(__file__).parent / "fixtures"


def fx(name: str) -> str:
    return str(FIXTURES / name)


def run(capsys, *argv):
    code = run_command(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- happy paths ---------------------------------------------------------------


def test_classify_swap_output(capsys):
    code, out, err = run(capsys, "classify", fx("gperm_c2_swap.json"))
    assert code == 0 and err == ""
    assert out == "1 * [ZxG / (H=e, m=1, a=g1)]\n(1-t^2)\n"


def test_classify_three_cycle_output(capsys):
    code, out, _ = run(capsys, "classify", fx("gperm_trivial_3cycle.json"))
    assert code == 0
    assert out == "1 * [ZxG / (H=G, m=3, a=e)]\n(1-t^3)\n"


def test_group_reference_by_path(capsys):
    code, out, _ = run(capsys, "classify", fx("gperm_c2_swap_by_path.json"))
    assert code == 0
    assert out.splitlines()[0] == "1 * [ZxG / (H=e, m=1, a=g1)]"


def test_acampo_matches_classify(capsys):
    _, out_classify, _ = run(capsys, "classify", fx("gperm_c2_swap.json"))
    code, out_acampo, _ = run(capsys, "acampo", fx("strata_x2_c2.json"))
    assert code == 0
    assert out_acampo == out_classify


def test_acampo_power_germ(capsys):
    code, out, _ = run(capsys, "acampo", fx("strata_xk_trivial.json"))
    assert code == 0
    assert out.splitlines()[1] == "(1-t^4)"


def test_forget_zero_element(capsys):
    code, out, _ = run(capsys, "forget", fx("expr_zero_trivial.json"))
    assert code == 0
    assert out == "1\n"


def test_st_desk_check(capsys):
    code, out, _ = run(capsys, "st", fx("expr_m2_trivial.json"), fx("expr_m2_trivial.json"))
    assert code == 0
    assert out == "0\n1\n"


def test_mul_and_add(capsys):
    code, out, _ = run(capsys, "mul", fx("expr_m2_trivial.json"), fx("expr_m2_trivial.json"))
    assert code == 0
    assert out.splitlines()[0] == "2 * [ZxG / (H=G, m=2, a=e)]"
    code, out, _ = run(capsys, "add", fx("expr_m2_trivial.json"), fx("expr_m2_trivial.json"))
    assert code == 0
    assert out.splitlines()[0] == "2 * [ZxG / (H=G, m=2, a=e)]"


def test_zeta_solve_three_cycle(capsys):
    code, out, _ = run(capsys, "zeta-solve", fx("lefschetz_3cycle.json"))
    assert code == 0
    assert out == "1 * [ZxG / (H=G, m=3, a=e)]\n(1-t^3)\n"


def test_subgroups_and_marks(capsys):
    code, out, _ = run(capsys, "subgroups", fx("group_s3.json"))
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 4
    assert lines[0].startswith("e: order=1, count=1")
    assert lines[-1].startswith("G: order=6, count=1")
    code, out, _ = run(capsys, "marks", fx("group_s3.json"))
    assert code == 0
    assert out.splitlines()[1] == "e: 6 0 0 0"


def test_chi_square_reflection(capsys):
    code, out, _ = run(capsys, "chi", fx("complex_square_reflection.json"))
    assert code == 0
    assert out == "2*[G/G] - 1*[G/e]\n"


def test_zeta_command_on_complex(capsys):
    code, out, _ = run(capsys, "zeta", fx("complex_square_c2.json"))
    assert code == 0
    assert out == "0\n1\n"


def test_lefschetz_text_output(capsys):
    code, out, _ = run(capsys, "lefschetz", fx("gperm_trivial_3cycle.json"))
    assert code == 0
    assert out == "m_max: 3\nH=G m=3 a=e: 3\n"


# -- structured format and round trips -----------------------------------------


def test_structured_classify_parses_back(capsys):
    code, out, _ = run(capsys, "classify", fx("gperm_c2_swap.json"), "--format", "structured")
    assert code == 0
    doc = parse_document(out)
    assert doc.kind == "expr"
    reference = parse_document_file(fx("expr_twisted_c2.json"))
    assert doc.payload.coeffs == reference.payload.coeffs


def test_structured_lefschetz_feeds_zeta_solve(capsys, tmp_path):
    code, out, _ = run(
        capsys, "lefschetz", fx("gperm_s3_regular_twist.json"), "--format", "structured"
    )
    assert code == 0
    table_file = tmp_path / "table.json"
    table_file.write_text(out)
    code, solved, _ = run(capsys, "zeta-solve", str(table_file))
    assert code == 0
    _, classified, _ = run(capsys, "classify", fx("gperm_s3_regular_twist.json"))
    assert solved == classified


def test_structured_chi_is_valid_json(capsys):
    code, out, _ = run(capsys, "chi", fx("complex_square_reflection.json"), "--format", "structured")
    assert code == 0
    obj = json.loads(out)
    assert obj["terms"][0]["label"] == "G"


@pytest.mark.parametrize(
    "argv",
    [
        ("classify", "gperm_s3_regular_twist.json"),
        ("acampo", "strata_x2_c2.json"),
        ("zeta-solve", "lefschetz_3cycle.json"),
        ("st", "expr_m2_trivial.json", "expr_m2_trivial.json"),
        ("mul", "expr_twisted_c2.json", "expr_twisted_c2.json"),
    ],
)
def test_structured_element_outputs_parse_back(capsys, argv):
    command, *files = argv
    code, out, _ = run(capsys, command, *(fx(f) for f in files), "--format", "structured")
    assert code == 0
    doc = parse_document(out)
    assert doc.kind == "expr"
    # the text render of the reparsed element matches the text command output
    code, text_out, _ = run(capsys, command, *(fx(f) for f in files))
    assert code == 0
    assert doc.payload.render() == text_out.splitlines()[0]


# -- determinism ---------------------------------------------------------------

ALL_RUNS = [
    ("subgroups", "group_c2.json"),
    ("subgroups", "group_s3.json"),
    ("subgroups", "group_d4.json"),
    ("subgroups", "group_c2xc2.json"),
    ("subgroups", "group_s3_gens.json"),
    ("subgroups", "group_table_c2.json"),
    ("marks", "group_s3.json"),
    ("marks", "group_d4.json"),
    ("classify", "gperm_c2_swap.json"),
    ("classify", "gperm_trivial_3cycle.json"),
    ("classify", "gperm_s3_regular_twist.json"),
    ("lefschetz", "gperm_c2_swap.json"),
    ("lefschetz", "gperm_s3_regular_twist.json"),
    ("zeta-solve", "lefschetz_3cycle.json"),
    ("chi", "complex_square_reflection.json"),
    ("chi", "complex_point_c2.json"),
    ("zeta", "complex_square_c2.json"),
    ("zeta", "complex_point_c2.json"),
    ("acampo", "strata_x2_c2.json"),
    ("acampo", "strata_x2y2_trivial.json"),
    ("forget", "expr_m2_trivial.json"),
    ("forget", "expr_zero_trivial.json"),
    ("st", "expr_m2_trivial.json", "expr_m2_trivial.json"),
    ("mul", "expr_twisted_c2.json", "expr_twisted_c2.json"),
    ("add", "expr_twisted_c2.json", "expr_twisted_c2.json"),
]


@pytest.mark.parametrize("fmt", ["text", "structured"])
def test_all_commands_are_deterministic(capsys, fmt):
    for command, *files in ALL_RUNS:
        argv = [command] + [fx(f) for f in files] + ["--format", fmt]
        code1, out1, err1 = run(capsys, *argv)
        code2, out2, err2 = run(capsys, *argv)
        assert code1 == code2 == 0, (command, err1)
        assert out1 == out2
        assert err1 == err2 == ""


# -- failure modes ---------------------------------------------------------------


def test_bad_commutation_names_generator_and_point(capsys):
    code, out, err = run(capsys, "classify", fx("gperm_bad_commutation.json"))
    assert code == 1
    assert out == ""
    assert "commute" in err and "generator" in err and "point" in err


def test_bad_strata_names_the_stratum(capsys):
    code, _, err = run(capsys, "acampo", fx("strata_bad_n.json"))
    assert code == 1
    assert "strata[0]" in err and "divide" in err


def test_unknown_subcommand_exits_two(capsys):
    code = run_command(["frobnicate"])
    capsys.readouterr()
    assert code == 2


def test_missing_file_is_a_validation_error(capsys):
    code, _, err = run(capsys, "classify", fx("no_such_file.json"))
    assert code == 1
    assert "cannot read" in err


def test_kind_mismatch_detected(capsys):
    code, _, err = run(capsys, "classify", fx("group_c2.json"))
    assert code == 1
    assert "expected a 'gperm' document" in err


def test_mismatched_groups_in_binary_op(capsys):
    code, _, err = run(capsys, "st", fx("expr_m2_trivial.json"), fx("expr_twisted_c2.json"))
    assert code == 1
    assert "common group" in err


def test_malformed_json_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "group",\n  "type": }\n')
    code, _, err = run(capsys, "subgroups", str(bad))
    assert code == 1
    assert "line 2" in err


def test_console_entry_point_runs():
    result = subprocess.run(
        [sys.executable, "-m", "eqzeta.cli", "classify", fx("gperm_c2_swap.json")],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert result.stdout == "1 * [ZxG / (H=e, m=1, a=g1)]\n(1-t^2)\n"
