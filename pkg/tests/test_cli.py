import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from rotabaxter.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_eval_examples():
    assert run("--weight", "1", "--base", "tensor", "eval", "R(x) * R(y)") == (0, "[x.y] + [[x] y] + [x [y]]\n")
    assert run("--weight", "0", "--base", "zero", "eval", "prec(x, y)") == (0, "x [y]\n")
    assert run("eval", "x * y") == (0, "0\n")


def test_flags_after_subcommand():
    assert run("eval", "R(x) * R(y)", "--base", "tensor", "--weight", "1")[1] == "[x.y] + [[x] y] + [x [y]]\n"


def test_eval_json():
    code, out = run("--format", "json", "eval", "[x] * [y]")
    assert code == 0 and json.loads(out)["result"] == "[[x] y] + [x [y]]"


def test_eval_errors():
    assert run("eval", "x y")[0] == 2
    assert run("--weight", "abc", "eval", "x")[0] == 2
    assert run("--base", "bogus", "eval", "x")[0] == 2


def test_table_base_and_alphabet(tmp_path):
    table = tmp_path / "t.txt"
    table.write_text("generators: e\ne e -> e\n")
    code, out = run("--base", f"table:{table}", "--weight", "1", "eval", "[e] * [e]")
    assert code == 0 and out == "[e] + [[e] e] + [e [e]]\n"
    alpha = tmp_path / "a.txt"
    alpha.write_text("x y\n")
    assert run("--alphabet", str(alpha), "eval", "x * [w]")[0] == 2


def test_count_binary_and_planar():
    assert run("count", "binary")[1].split("\n")[:5] == ["n=0  1", "n=1  1", "n=2  2", "n=3  5", "n=4  14"]
    code, out = run("--format", "json", "count", "planar")
    assert code == 0 and [r["count"] for r in json.loads(out)["rows"]] == [1, 1, 3, 11, 45]


def test_count_words_two_ways():
    code, out = run("--format", "json", "--max-n", "3", "count", "diwords")
    rows = json.loads(out)["rows"]
    assert code == 0 and [(r["count"], r["from_trees"]) for r in rows] == [(1, 1), (2, 2), (5, 5)]
    code, out = run("--format", "json", "--max-n", "3", "count", "triwords")
    assert code == 0 and [r["count"] for r in json.loads(out)["rows"]] == [1, 3, 11]


def test_embed():
    assert run("embed", "binary", "((|^x|) ^z (|^y|))") == (0, "[x] z [y]\n")
    assert run("embed", "planar", "V(|,x,|,y,|)") == (0, "x.y\n")
    assert run("embed", "binary", "|")[0] == 2
    assert run("embed", "planar", "V(|,x")[0] == 2


def test_check_suites_pass_and_are_deterministic():
    a = run("--seed", "7", "--trials", "20", "check", "words")
    b = run("check", "words", "--trials", "20", "--seed", "7")
    assert a == b and a[0] == 0
    assert "eleven-term matching" in a[1]
    code, out = run("--format", "json", "--trials", "10", "check", "oracle")
    assert code == 0 and json.loads(out)["schema"] == 1
    assert run("--trials", "5", "--base", "tensor", "--weight", "1", "check", "dendriform")[0] == 0
    assert run("--max-n", "2", "check", "trees")[0] == 0
    assert run("--trials", "5", "check", "morphism")[0] == 0


def test_check_rejects_bad_trials():
    assert run("--trials", "0", "check", "oracle")[0] == 2


def test_envelope_files():
    code, out = run("envelope", str(DATA / "sequence_trialgebra.txt"), "--oracle", "sequence")
    assert code == 0 and out.strip().endswith("72 generator images, oracle truncated_sequences(N=6, weight=1)")
    code, out = run("--format", "json", "envelope", str(DATA / "polynomial_dialgebra.txt"), "--oracle", "polynomial")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1 and rep["pass"] and len(rep["results"]) == 32
    assert {"pair", "generator", "residual_terms", "pass"} <= set(rep["results"][0])


def test_envelope_corrupted_file_fails():
    code, _ = run("envelope", str(DATA / "corrupted_dialgebra.txt"), "--oracle", "polynomial")
    assert code == 1


def test_envelope_missing_file():
    assert run("envelope", "/nonexistent/d.txt", "--oracle", "sequence")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rotabaxter", "eval", "[x] * y"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "[x] y\n"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"], out=io.StringIO())
    assert info.value.code == 2
