import json
import subprocess
import sys

import pytest

from ckstar.bialgebra import TensorElement, delta
from ckstar.cli import main
from ckstar.expression import element_from_json, parse_expression
from ckstar.matrix_monoid import full


@pytest.fixture
def mats(tmp_path):
    f4 = tmp_path / "F4.json"
    f4.write_text(json.dumps({"n": 4, "rows": [[1] * 4] * 4}))
    g = tmp_path / "G.txt"
    g.write_text("1 1\n1 0\n")
    return {"F4": str(f4), "G": str(g)}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_matrix_factor(capsys, mats):
    code, out, _ = run(capsys, "matrix", "factor", mats["F4"])
    assert code == 0
    assert out.splitlines() == ["F1 (x) F4", "F2 (x) F2", "F4 (x) F1"]


def test_matrix_classify(capsys, mats):
    code, out, _ = run(capsys, "matrix", "classify", mats["G"], "--json")
    data = json.loads(out)
    assert code == 0 and data["irreducible"] and data["simple_ck"] and not data["permutation"]
    assert data["tag"] == "G"


def test_ktheory(capsys, mats):
    code, out, _ = run(capsys, "ktheory", mats["F4"])
    assert code == 0 and out.strip() == "K0 = Z/3, K1 = 0"
    code, out, _ = run(capsys, "ktheory", "F4", "--smith", "--json")
    data = json.loads(out)
    assert data["smith_diagonal"] == [1, 1, 1, 3] and data["K0"] == {"free_rank": 0, "torsion": [3]}


def test_expr_delta(capsys, mats):
    code, out, _ = run(capsys, "expr", "delta", "--context", mats["F4"], "s1")
    assert code == 0
    assert out.splitlines() == ["[F1 (x) F4] 1 * I (x) s1", "[F2 (x) F2] 1 * s1 (x) s1", "[F4 (x) F1] 1 * s1 (x) I"]


def test_expr_delta_json_roundtrip(capsys):
    code, out, _ = run(capsys, "expr", "delta", "--context", "F6", "s1 - (1/2)i s2 s3*", "--json", "--check")
    data = json.loads(out)
    assert code == 0 and all(data["checks"].values())
    x = parse_expression("s1 - (1/2)i s2 s3*", full(6))
    assert TensorElement.from_json(data["terms"]) == delta(x)


def test_expr_normalize(capsys):
    code, out, _ = run(capsys, "expr", "normalize", "--context", "F2", "s1 s1* + s2 s2*")
    assert code == 0 and out.strip() == "I"
    code, out, _ = run(capsys, "expr", "normalize", "--context", "F2", "s1 s2* + (1/2)I", "--json")
    data = json.loads(out)
    assert element_from_json(data) == parse_expression("s1 s2* + (1/2)I", full(2))
    assert parse_expression(data["text"], full(2)) == element_from_json(data)


def test_expr_counit(capsys):
    assert run(capsys, "expr", "counit", "--context", "F2", "s1")[1].strip() == "0"
    assert run(capsys, "expr", "counit", "--context", "F1", "3 I")[1].strip() == "3"


def test_expr_gauge(capsys):
    code, out, _ = run(capsys, "expr", "gauge", "--context", "F2", "s1 + s1 s1*")
    assert code == 0
    assert out.splitlines() == ["1 * (s1 s1*)", "z^(log 2) * (s1)"]
    code, out, _ = run(capsys, "expr", "gauge", "--context", "F2", "s1", "--theta", "0", "--json")
    assert json.loads(out)[0]["value"] == [1.0, 0.0]


def test_expr_member(capsys, mats):
    code, out, _ = run(capsys, "expr", "member", "--context", "F4", "s1 s1*", "--family", "SF")
    assert code == 0 and "member: yes" in out
    code, out, _ = run(capsys, "expr", "member", "--context", mats["G"], "s1", "--family", "C_star")
    assert code == 1 and "member: no" in out
    code, _, _ = run(capsys, "expr", "member", "--context", "F3", "s1 s3", "--family", "CK_sigma", "--sigma", "1,3")
    assert code == 0
    code, _, err = run(capsys, "expr", "member", "--context", "F3", "s1", "--family", "CK_sigma")
    assert code == 2 and "sigma" in err


def test_rep_decompose_and_verify(capsys, mats):
    code, out, _ = run(capsys, "rep", "decompose", "-A", "F2", "-B", "F2", "-J", "1,2", "-K", "1")
    assert code == 0 and out.strip() == "P(1,3) over F2(x)F2 [primitive]"
    code, out, _ = run(capsys, "rep", "decompose", "-A", mats["G"], "-B", mats["G"], "-J", "1,2", "-K", "1")
    assert out.strip() == "P(1,3) over G(x)G [primitive]"
    code, out, _ = run(capsys, "rep", "verify", "-A", "F2", "-B", "F2", "-J", "1,2", "-K", "1,2", "--depth", "4")
    assert code == 0 and out.splitlines()[-1] == "verified at depth 4: yes"
    code, _, err = run(capsys, "rep", "decompose", "-A", mats["G"], "-B", "F2", "-J", "2", "-K", "1")
    assert code == 2 and "cyclically admissible" in err


def test_shift_words(capsys, mats):
    code, out, _ = run(capsys, "shift", "words", "-A", mats["G"], "-l", "3")
    assert out.splitlines() == ["1,1,1", "1,1,2", "1,2,1", "2,1,1", "2,1,2"]
    code, out, _ = run(capsys, "shift", "words", "-A", mats["G"], "-l", "4", "--count-only")
    assert out.strip() == "8"
    data = json.loads(run(capsys, "shift", "words", "-A", "F2", "-l", "2", "--json")[1])
    assert data["count"] == 4 and data["words"][1] == [1, 2]


@pytest.mark.parametrize(
    "argv",
    [
        ["expr", "normalize", "--context", "F2", "s3"],
        ["expr", "normalize", "--context", "F2", "s1 +"],
        ["ktheory", "nonexistent.json"],
        ["matrix", "factor", "[[1,0],[1,0]]"],
        ["shift", "words", "-A", "F2", "-l", "0"],
        ["matrix", "factor", "F2", "--bogus"],
        ["frobnicate"],
    ],
)
def test_input_errors_exit_two(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err


def test_output_is_deterministic(capsys):
    argv = ["expr", "delta", "--context", "F12", "s5 s7* + s2"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ckstar", "ktheory", "F3"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "K0 = Z/2, K1 = 0"
