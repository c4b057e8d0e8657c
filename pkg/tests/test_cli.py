from __future__ import annotations

import io
from pathlib import Path

import pytest

from specimen.cli import main

FIXTURES = Path(__file__).parent.parent / "fixtures"
CARLOTTA_LEX = str(FIXTURES / "carlotta.lex")
CARLOTTA_MODEL = str(FIXTURES / "carlotta.model")
BRITS_LEX = str(FIXTURES / "brits.lex")
BRITS_MODEL = str(FIXTURES / "brits.model")


def run(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_check_prints_type():
    code, out, err = run("check", "--lexicon", CARLOTTA_LEX, "--term", "tall{2yoGirl} Carlotta")
    assert code == 0
    assert out == "t\n"
    assert err == ""


def test_check_type_error_exit_2():
    code, out, err = run("check", "--lexicon", CARLOTTA_LEX, "--term", "tall{human} Carlotta")
    assert code == 2
    assert out == ""
    assert "human" in err and "2yoGirl" in err


def test_normalize():
    code, out, _ = run(
        "normalize", "--lexicon", CARLOTTA_LEX, "--term", "(/\\a. \\x:a. x){human} (h Carlotta)"
    )
    assert code == 0
    assert out == "h Carlotta\n"


def test_compose_brits_golden():
    code, out, err = run("compose", "--lexicon", BRITS_LEX, "--tree", "(app (app love theBrits) France)")
    assert code == 0
    assert "reading 1: cost=0" in out
    assert "love(spec[brits], France)" in out
    assert "reading 2" not in out


def test_compose_carlotta_two_readings():
    code, out, _ = run("compose", "--lexicon", CARLOTTA_LEX, "--tree", "(app tall Carlotta)")
    assert code == 0
    assert "reading 1: cost=0" in out and "reading 2: cost=1" in out
    assert "tall.a:=2yoGirl" in out and "tall.a:=human" in out
    assert "Carlotta:h" in out


def test_compose_sexpr_format():
    code, out, _ = run(
        "compose", "--lexicon", BRITS_LEX, "--tree", "(app (app love theBrits) France)",
        "--format", "sexpr",
    )
    assert code == 0
    assert "(love (spec brits) France)" in out


def test_compose_tree_file(tmp_path):
    tree_file = tmp_path / "t.tree"
    tree_file.write_text("(app tall Carlotta)")
    code, out, _ = run("compose", "--lexicon", CARLOTTA_LEX, "--tree-file", str(tree_file))
    assert code == 0 and "reading 2" in out


def test_compose_inline_wins_over_file(tmp_path):
    tree_file = tmp_path / "t.tree"
    tree_file.write_text("(app (app love theBrits) France)")
    code, out, _ = run(
        "compose", "--lexicon", CARLOTTA_LEX, "--tree", "(app tall Carlotta)",
        "--tree-file", str(tree_file),
    )
    assert code == 0 and "tall.a:=2yoGirl" in out


def test_compose_no_reading_exit_3():
    code, out, err = run("compose", "--lexicon", BRITS_LEX, "--tree", "(app France theBrits)")
    assert code == 3
    assert out == ""
    assert "no reading" in err


def test_eval_true_and_false():
    code, out, _ = run(
        "eval", "--model", BRITS_MODEL, "--lexicon", BRITS_LEX,
        "--formula-term", "drinks_tea spec{brits}",
    )
    assert (code, out) == (0, "true\n")
    code, out, _ = run(
        "eval", "--model", BRITS_MODEL, "--lexicon", BRITS_LEX,
        "--formula-term", "drinks_tea spec{brits}", "--theta", "0.9",
    )
    assert (code, out) == (0, "false\n")


def test_eval_theta_fraction_form():
    code, out, _ = run(
        "eval", "--model", BRITS_MODEL, "--lexicon", BRITS_LEX,
        "--formula-term", "love{brits}{country} spec{brits} France", "--theta", "4/5",
    )
    assert (code, out) == (0, "true\n")


def test_eval_requires_type_t():
    code, _, err = run("eval", "--model", BRITS_MODEL, "--lexicon", BRITS_LEX, "--formula-term", "France")
    assert code == 2
    assert "type t" in err


def test_eval_bad_theta_rejected():
    code, _, err = run(
        "eval", "--model", BRITS_MODEL, "--lexicon", BRITS_LEX,
        "--formula-term", "drinks_tea spec{brits}", "--theta", "0.5",
    )
    assert code == 2


def test_eval_specimen_of_nonclass_exit_4():
    code, _, err = run(
        "eval", "--model", BRITS_MODEL, "--lexicon", BRITS_LEX, "--formula-term", "not spec{t}"
    )
    assert code == 4
    assert "evaluation error" in err


def test_judge_output():
    code, out, _ = run(
        "judge", "--model", BRITS_MODEL, "--lexicon", BRITS_LEX,
        "--class", "brits", "--pred", "drinks_tea",
    )
    assert code == 0
    assert out.splitlines()[0] == "status: HoldsMost"
    assert "ratio: 4/5" in out
    assert "rules: most" in out


def test_judge_lambda_predicate():
    code, out, _ = run(
        "judge", "--model", BRITS_MODEL, "--lexicon", BRITS_LEX,
        "--class", "brits", "--pred", "\\x:brits. not (drinks_tea x)", "--theta", "0.7",
    )
    assert code == 0
    assert "status: RefutedMinority" in out
    assert "ratio: 1/5" in out


def test_usage_error_exit_1():
    code, _, err = run("compose", "--lexicon", BRITS_LEX)  # missing --tree
    assert code == 1
    assert "usage error" in err
    code, _, _ = run("frobnicate")
    assert code == 1


def test_missing_file_exit_1():
    code, _, err = run("check", "--lexicon", "no/such/file.lex", "--term", "x")
    assert code == 1


def test_byte_identical_repeat_runs():
    args = ("compose", "--lexicon", CARLOTTA_LEX, "--tree", "(app tall Carlotta)")
    first = run(*args)
    second = run(*args)
    assert first == second


def test_no_result_text_on_error_stream():
    code, out, err = run("compose", "--lexicon", CARLOTTA_LEX, "--tree", "(app tall Carlotta)")
    assert code == 0 and err == ""
