"""CLI behavior: rendering formats, tables, verification, exit codes, determinism."""

from __future__ import annotations

import json
import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from conftest import poison_truncated_euler
from etp import X, Y, MultiPoly, truncated_euler_poly
from etp.cli import (
    main,
    parse_rational,
    poly_from_document,
    poly_latex,
    poly_text,
    poly_to_document,
)


def run_cli(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- parsing and rendering ------------------------------------------------------


def test_parse_rational():
    assert parse_rational("3") == 3
    assert parse_rational("-3/4") == Fraction(-3, 4)
    for bad in ("1.5", "3/-4", "x", "", "1/0"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_poly_text_forms():
    assert poly_text(MultiPoly.zero()) == "0"
    assert poly_text(MultiPoly.const(-12)) == "-12"
    assert poly_text(X - Fraction(1, 2)) == "x-1/2"
    assert poly_text(6 * X) == "6*x"
    assert poly_text(12 * X**2 - 12) == "12*x^2-12"
    assert poly_text(-X + Y) == "-x+y"
    assert poly_text(Fraction(1, 2) * X**2 * Y) == "1/2*x^2*y"


def test_poly_latex_forms():
    assert poly_latex(MultiPoly.zero()) == "0"
    assert poly_latex(X**2 - 2 * X + 1) == "x^{2}-2x+1"
    assert poly_latex(X - Fraction(1, 2)) == r"x-\frac{1}{2}"
    assert poly_latex(Fraction(3, 2) * X * Y**3) == r"\frac{3}{2}xy^{3}"


def test_poly_document_roundtrip_rejects_malformed():
    doc = poly_to_document(2 * X**2 - Y)
    assert poly_from_document(doc) == 2 * X**2 - Y
    with pytest.raises(ValueError):
        poly_from_document({"vars": ["x"], "terms": []})
    dup = {
        "vars": ["x", "y"],
        "terms": [
            {"coef": {"num": "1", "den": "1"}, "exp": [1, 0]},
            {"coef": {"num": "2", "den": "1"}, "exp": [1, 0]},
        ],
    }
    with pytest.raises(ValueError):
        poly_from_document(dup)


# -- compute ---------------------------------------------------------------------


def test_compute_text(capsys):
    code, out, _ = run_cli(capsys, "compute", "--family", "truncated-euler", "--m", "2", "--n", "3")
    assert code == 0
    assert out == "6*x\n"


def test_compute_at(capsys):
    code, out, _ = run_cli(
        capsys, "compute", "--family", "truncated-euler", "--m", "2", "--n", "3", "--at", "2"
    )
    assert (code, out) == (0, "12\n")
    code, out, _ = run_cli(
        capsys, "compute", "--family", "truncated-euler", "--m", "2", "--n", "3", "--at", "0"
    )
    assert (code, out) == (0, "0\n")


def test_compute_latex(capsys):
    code, out, _ = run_cli(
        capsys, "compute", "--family", "hypergeom-bernoulli", "--m", "0", "--n", "2",
        "--format", "latex",
    )
    assert (code, out) == (0, "x^{2}-2x+1\n")


def test_compute_number_family(capsys):
    code, out, _ = run_cli(
        capsys, "compute", "--family", "truncated-euler-number", "--m", "2", "--n", "4"
    )
    assert (code, out) == (0, "-12\n")


def test_compute_json_roundtrip(capsys):
    code, out, _ = run_cli(
        capsys, "compute", "--family", "truncated-euler", "--m", "2", "--n", "6",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["metadata"] == {"family": "truncated-euler", "n": 6, "m": 2}
    assert poly_from_document(doc) == truncated_euler_poly(2, 6)


def test_compute_csv_term_rows(capsys):
    code, out, _ = run_cli(
        capsys, "compute", "--family", "truncated-euler", "--m", "2", "--n", "4",
        "--format", "csv",
    )
    assert code == 0
    assert out.splitlines() == ["num,den,exp_x,exp_y", "12,1,2,0", "-12,1,0,0"]


def test_compute_frobenius(capsys):
    code, out, _ = run_cli(
        capsys, "compute", "--family", "frobenius-euler", "--n", "2", "--r", "1",
        "--lambda=1/2",
    )
    assert (code, out) == (0, "x^2-4*x+6\n")


def test_compute_usage_errors(capsys):
    code, _, err = run_cli(capsys, "compute", "--family", "frobenius-euler", "--n", "2")
    assert code == 2 and "--lambda" in err
    code, _, err = run_cli(
        capsys, "compute", "--family", "frobenius-euler", "--n", "2", "--lambda=1"
    )
    assert code == 2
    code, _, err = run_cli(capsys, "compute", "--family", "truncated-euler", "--n", "2")
    assert code == 2 and "--m" in err


def test_argparse_rejections():
    for argv in (
        ["compute", "--family", "nonsense", "--n", "1"],
        ["compute", "--family", "truncated-euler", "--m", "1", "--n", "-3"],
        ["compute", "--family", "truncated-euler", "--m", "1", "--n", "2", "--format", "xml"],
        ["compute", "--family", "truncated-euler", "--m", "1", "--n", "2", "--at", "1.5"],
        ["bogus-command"],
    ):
        with pytest.raises(SystemExit) as excinfo:
            main(argv)
        assert excinfo.value.code == 2


# -- table -----------------------------------------------------------------------


def test_table_csv(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--family", "truncated-euler", "--m-max", "2", "--n-max", "4",
        "--format", "csv",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "m,n,polynomial"
    assert len(lines) == 16  # header + 3 m-values x 5 n-values
    assert "2,4,12*x^2-12" in lines


def test_table_fixed_order_families(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--family", "bernoulli", "--n-max", "2", "--format", "csv"
    )
    assert code == 0
    assert out.splitlines() == ["m,n,polynomial", "1,0,1", "1,1,x-1/2", "1,2,x^2-x+1/6"]
    code, out, _ = run_cli(capsys, "table", "--family", "euler", "--n-max", "1")
    assert code == 0
    assert out.splitlines() == ["0,0: 1", "0,1: x-1/2"]


def test_table_frobenius_uses_power_index(capsys):
    code, _, err = run_cli(capsys, "table", "--family", "frobenius-euler", "--n-max", "2")
    assert code == 2 and "--lambda" in err
    code, out, _ = run_cli(
        capsys, "table", "--family", "frobenius-euler", "--m-max", "1", "--n-max", "2",
        "--lambda=2", "--format", "csv",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "0,0,1"
    assert lines[2] == "0,1,x"  # r = 0 collapses to plain powers
    assert len(lines) == 7


def test_table_json_and_latex(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--family", "truncated-euler", "--m-max", "1", "--n-max", "2",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["family"] == "truncated-euler"
    assert len(payload["entries"]) == 6
    code, out, _ = run_cli(
        capsys, "table", "--family", "bernoulli", "--n-max", "1", "--format", "latex"
    )
    assert code == 0
    assert out.splitlines() == ["1 & 0 & 1 \\\\", r"1 & 1 & x-\frac{1}{2} \\"]


# -- verify ----------------------------------------------------------------------


def test_verify_small_grid_passes(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--ids", "T3_addition,C1_eq1", "--m-max", "1", "--n-max", "4"
    )
    assert code == 0
    assert "T3_addition: 10 passed, 0 failed" in out
    assert "total: 15 passed, 0 failed" in out


def test_verify_json_structure(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--ids", "T7_frobenius", "--m-max", "0", "--n-max", "3",
        "--lambda=2", "--r-max", "1", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["total"] == {"passed": 8, "failed": 0}
    assert payload["by_id"]["T7_frobenius"]["passed"] == 8
    assert set(payload["t7_variants"]) <= {"minus_one", "minus_lambda"}
    assert payload["failures"] == []


def test_verify_csv(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--ids", "C2_eq302", "--n-max", "2", "--format", "csv"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "id,params,passed"
    assert len(lines) == 4


def test_verify_usage_errors(capsys):
    code, _, err = run_cli(capsys, "verify", "--ids", "T1_bogus")
    assert code == 2 and "unknown identity id" in err
    code, _, err = run_cli(capsys, "verify", "--ids", ",")
    assert code == 2
    code, _, err = run_cli(capsys, "verify", "--lambda=1")
    assert code == 2


def test_verify_detects_poisoned_cache(fresh_caches, capsys):
    poison_truncated_euler(random.Random(5))
    code, out, _ = run_cli(capsys, "verify", "--format", "json")
    assert code == 1
    payload = json.loads(out)
    assert payload["total"]["failed"] > 0
    assert all(f["residual"]["terms"] for f in payload["failures"])


# -- oracle-diff -----------------------------------------------------------------


def test_oracle_diff_clean(capsys):
    code, out, _ = run_cli(capsys, "oracle-diff", "--m-max", "2", "--n-max", "6")
    assert code == 0
    assert out.strip() == "21 comparisons, 0 disagreements"


def test_oracle_diff_flags_poison(fresh_caches, capsys):
    m, n = poison_truncated_euler(random.Random(9))
    code, out, _ = run_cli(capsys, "oracle-diff", "--format", "json")
    assert code == 1
    payload = json.loads(out)
    assert payload["comparisons"] == 44
    assert {"m": m, "n": n} == {
        "m": payload["disagreements"][0]["m"],
        "n": payload["disagreements"][0]["n"],
    }


# -- determinism -------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "--family", "truncated-euler", "--m", "2", "--n", "6", "--format", "json"],
        ["verify", "--ids", "T3_addition", "--m-max", "1", "--n-max", "3", "--format", "json"],
        ["table", "--family", "truncated-euler", "--m-max", "1", "--n-max", "3", "--format", "csv"],
    ],
)
def test_byte_identical_output_across_processes(argv):
    outputs = []
    for seed in ("0", "1"):
        env = {**os.environ, "PYTHONHASHSEED": seed}
        proc = subprocess.run(
            [sys.executable, "-m", "etp", *argv], capture_output=True, env=env, check=True
        )
        outputs.append(proc.stdout)
    assert outputs[0] == outputs[1]
