import json
from pathlib import Path

import pytest

from f2hoch.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hh_paper(capsys):
    code, out, _ = run(capsys, "hh", "--n", "3", "--s", "-1")
    assert code == 0 and "dim HH^{3,-1} = 0" in out


def test_hh_certificates(capsys):
    code, out, _ = run(capsys, "hh", "--n", "3", "--s", "-1", "--certificates")
    assert code == 0
    assert out.count("∂²(F2(") == 10
    assert "F3(e⊗b; a^2)" in out


def test_hh_permuted_generators_agree(capsys, tmp_path):
    f = tmp_path / "dual.alg"
    f.write_text("quadratic {\n generators = [a]\n relations = [a*a]\n}\n")
    _, j1, _ = run(capsys, "hh", "--algebra", "dual", "--n", "2", "--s", "-1", "--json")
    _, j2, _ = run(capsys, "hh", "--algebra", str(f), "--n", "2", "--s", "-1", "--json")
    g = tmp_path / "b2.alg"
    g.write_text("quadratic {\n generators = [b, a]\n relations = [a*b, b*a]\n}\n")
    _, k1, _ = run(capsys, "hh", "--algebra", "boolean2", "--n", "2", "--s", "0", "--json")
    _, k2, _ = run(capsys, "hh", "--algebra", str(g), "--n", "2", "--s", "0", "--json")
    dim = lambda s: json.loads(s)["claims"][0]["values"]["dim_HH"]  # noqa: E731
    assert dim(j1) == dim(j2) and dim(k1) == dim(k2)


def test_hh_refuses_non_koszul(capsys):
    code, _, err = run(capsys, "hh", "--algebra", str(DATA / "non_koszul.alg"), "--n", "2", "--s", "0")
    assert code == 2 and "refusing" in err


def test_bad_inputs(capsys, tmp_path):
    assert run(capsys, "hh", "--algebra", "nope", "--n", "1", "--s", "0")[0] == 2
    bad = tmp_path / "bad.alg"
    bad.write_text("quadratic {\n generators = [a]\n relations = [a*q]\n}\n")
    code, _, err = run(capsys, "koszul-check", "--algebra", str(bad))
    assert code == 2 and "line 3" in err


@pytest.mark.parametrize("algebra,N,code", [
    ("paper", 6, 0), ("boolean2", 5, 0), ("tensor3", 4, 0),
    (str(DATA / "non_koszul.alg"), 5, 1),
])
def test_koszul_check(capsys, algebra, N, code):
    assert run(capsys, "koszul-check", "--algebra", algebra, "--max-degree", str(N))[0] == code


def test_basis(capsys):
    code, out, _ = run(capsys, "basis", "--n", "4", "--kind", "alternating")
    assert code == 0 and "|B'_4| = 13" in out
    code, out, _ = run(capsys, "basis", "--n", "3", "--kind", "strings")
    assert code == 0 and "|B^3| = 27" in out
    assert run(capsys, "basis", "--n", "3", "--kind", "sub", "--i", "2")[0] == 0
    assert run(capsys, "basis", "--algebra", "dual", "--n", "3", "--kind", "strings")[0] == 2


def test_massey_witness(capsys):
    code, out, _ = run(capsys, "massey", "--dga", str(DATA / "witness.dga"), "--classes", "a,b,c")
    assert code == 0 and "does not vanish; set = {[s]}" in out


def test_massey_formal(capsys):
    code, out, _ = run(capsys, "massey", "--dga", "formal-paper", "--classes", "a,b,c", "--json")
    doc = json.loads(out)
    vals = doc["claims"][0]["values"]
    assert code == 0 and vals["vanishes"] and vals["contains_zero"] and vals["quotient_image"] == "0"


@pytest.mark.parametrize("argv,needle", [
    (["--dga", "witness", "--classes", "t,b,c"], "not a cocycle"),
    (["--dga", "witness", "--classes", "a,q,c"], "unknown"),
    (["--dga", "formal-paper", "--classes", "a,a,a"], "obstruction"),
    (["--dga", "witness", "--classes", "a,b,c", "--cap", "4"], "--cap"),
    (["--dga", str(DATA / "broken_leibniz.dga"), "--classes", "a,b,c"], "witness t, c"),
])
def test_massey_faults(capsys, argv, needle):
    code, _, err = run(capsys, "massey", *argv)
    assert code == 2 and needle in err


def test_m3(capsys):
    code, out, _ = run(capsys, "m3", "--dga", "witness")
    assert code == 0 and "m3([a] ⊗ [b] ⊗ [c]) = [s]" in out and "[m3] != 0" in out
    code, out, _ = run(capsys, "m3", "--dga", "formal-paper", "--seed", "2")
    assert code == 0 and "[m3] = 0" in out


def test_paper_check_injected_wrong_relation(capsys):
    code, out, _ = run(capsys, "paper-check", "--algebra", str(DATA / "wrong_relation.alg"))
    assert code == 1
    assert "[FAIL] distributivity" in out and "span(B_i^n) != X_i^n" in out


def test_paper_check_json_schema(capsys):
    code, out, _ = run(capsys, "paper-check", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["exit_status"] == 0
    assert all(c["passed"] for c in doc["claims"])
    assert "timings" not in out
