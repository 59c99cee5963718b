import json

import pytest

from hopfkit.cli import run


def _json(capsys, argv):
    code = run(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_analyze_preset(capsys):
    code, out = _json(capsys, ["datum", "analyze", "--preset", "A1"])
    assert code == 0
    assert out["cartan"]["type"] == "A1"


def test_counterexample_analyze(capsys):
    code, out = _json(capsys, ["datum", "analyze", "--preset", "A1xA1-G-counterexample"])
    assert code == 0 and out["nli"] is False


def test_tensor_decompose(capsys):
    code, out = _json(capsys, ["module", "tensor", "--preset", "A1", "--m1", "1", "--m2", "1", "--decompose"])
    assert code == 0
    assert [(s["m"], s["multiplicity"]) for s in out["decomposition"]["summands"]] == [([2], 1), ([0], 1)]


def test_simple_table(capsys):
    assert run(["module", "simple", "--preset", "A2", "--m", "1,1", "--table", "--tsv"]) == 0
    assert capsys.readouterr().out.strip()


def test_json_is_deterministic(capsys):
    argv = ["module", "casimir", "--preset", "A2", "--m", "1,0", "--m2", "0,1", "--json"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first
    out = json.loads(first)
    assert out["omega_commutation_ok"] and out["distinct"]


def test_gcheck_counterexample(capsys):
    code, out = _json(capsys, ["gcheck", "--preset", "A1xA1-G-counterexample", "--counterexample"])
    assert code == 0
    assert out["m_prime"] == [2, 2] and out["m"] == [4, 4]
    assert out["G_equal"] and out["chi_prime_leq_chi"] and not out["nli"]


def test_gcheck_refuses_without_flag(capsys):
    code = run(["gcheck", "--preset", "A1xA1-G-counterexample"])
    assert code != 0
    assert "NliFails" in capsys.readouterr().err


def test_dims(capsys):
    code, out = _json(capsys, ["algebra", "dims", "--preset", "A2", "--max-height", "2"])
    assert code == 0
    assert {d["alpha"]: d["dim_minus"] for d in out["dims"]}["1,1"] == 2


def test_gram(capsys):
    code, out = _json(capsys, ["algebra", "gram", "--preset", "A1", "--degree", "2"])
    assert code == 0 and out["determinant"] == "q^2 + 1"


def test_check_identities(capsys):
    assert run(["algebra", "check-identities", "--preset", "A2", "--max-height", "2"]) == 0


def test_oracle(capsys):
    code, out = _json(capsys, ["oracle", "weyl-dim", "--type", "A2", "--m", "1,1"])
    assert code == 0 and out["dim"] == 8


def test_dump_round_trip(capsys, tmp_path):
    assert run(["datum", "dump", "--preset", "B2"]) == 0
    path = tmp_path / "b2.json"
    path.write_text(capsys.readouterr().out)
    code, out = _json(capsys, ["module", "simple", str(path), "--m", "1,0"])
    assert code == 0
    code2, out2 = _json(capsys, ["module", "simple", "--preset", "B2", "--m", "1,0"])
    assert out["dim"] == out2["dim"] == 5


def test_ell_override(capsys):
    code, out = _json(capsys, ["module", "simple", "--preset", "A2", "--ell", "2,q", "--m", "1,1"])
    assert code == 0 and out["dim"] == 8


@pytest.mark.parametrize("content", ["{nonsense", "[]", '{"parameters": ["q"]}'])
def test_bad_files(capsys, tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    assert run(["datum", "validate", str(path)]) == 1
    assert capsys.readouterr().err.startswith("error:")


def test_missing_file(capsys, tmp_path):
    assert run(["datum", "validate", str(tmp_path / "nope.json")]) == 1


def test_not_dominant_exit(capsys):
    assert run(["module", "simple", "--preset", "A1", "--m", "-1"]) != 0
