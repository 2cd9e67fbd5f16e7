import json

import pytest

from envelope.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_bundled(capsys):
    code, out, _ = run(capsys, "check", "heisenberg.lie", "--json")
    assert code == 0
    assert json.loads(out)["dim"] == 3


def test_check_errors(tmp_path, capsys):
    bad = tmp_path / "bad.lie"
    bad.write_text("basis x y\nbracket x q = y\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "line 2" in err and "'q'" in err
    jac = tmp_path / "jac.lie"
    jac.write_text("basis e f h\nbracket e f = h\nbracket h e = 2 e\nbracket h f = -1 f\n")
    code, out, _ = run(capsys, "check", str(jac), "--json")
    assert code == 1
    assert json.loads(out)["jacobi_failures"][0]["triple"] == ["e", "f", "h"]
    assert run(capsys, "check", str(tmp_path / "missing.lie"))[0] == 2


def test_eval_modes(capsys):
    assert run(capsys, "eval", "heis.lie", "y*x")[1].strip() == "-z + x*y"
    assert run(capsys, "eval", "heis.lie", "bch(x,y)", "--mode", "trunc", "4")[1].strip() == "x + y + 1/2*z"
    assert run(capsys, "eval", "k1.lie", "q(x^2)", "--mode", "abelian")[1].strip() == "w1^2"
    assert run(capsys, "eval", "-", "pair(1,2)*pair(3,4)", "--mode", "a2")[1].strip() == "(10, 8)"


def test_eval_rejects_bad_input(capsys):
    assert run(capsys, "eval", "heis.lie", "exp(x)")[0] == 2
    assert run(capsys, "eval", "heis.lie", "x +")[0] == 2
    assert run(capsys, "eval", "heis.lie", "x", "--mode", "trunc")[0] == 2
    assert run(capsys, "eval", "heis.lie", "q(x)", "--mode", "abelian")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["eval"])
    assert exc.value.code == 2


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "heis.lie", "y*x", "--json")
    data = json.loads(out)
    assert code == 0
    assert {"monomial": ["z"], "coeff": "-1"} in data["result"]["terms"]


def test_primitives_and_membership(capsys):
    code, out, _ = run(capsys, "primitives", "sl2.lie", "--degree", "4", "--json")
    assert code == 0 and json.loads(out)["dim"] == 3
    code, out, _ = run(capsys, "membership", "heis.lie", "x*z + z", "--ideal", "z", "--json")
    assert code == 0 and json.loads(out)["member"] is True
    code, out, _ = run(capsys, "membership", "heis.lie", "x*y", "--ideal", "z", "--json")
    assert json.loads(out)["member"] is False


def test_tower(capsys):
    code, out, _ = run(capsys, "tower", "heisenberg_tower.lie", "--project", "y*x", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "pass" and data["bonding_failures"] == 0
    assert all(t["compatible"] for t in data["threads"])


def test_census(capsys):
    code, out, _ = run(capsys, "census-a2", "3", "--json")
    assert code == 0 and len(json.loads(out)["morphisms"]) == 3
    assert run(capsys, "census-a2", "0")[0] == 2


def test_verify_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify", "--suite", "a2", "--suite", "membership", "--json")
    code2, out2, _ = run(capsys, "verify", "--suite", "a2", "--suite", "membership", "--json")
    assert code1 == code2 == 0
    assert out1 == out2
    statuses = {c["suite"]: c["status"] for c in json.loads(out1)["checks"]}
    assert statuses["hopf"] == "skip" and statuses["a2"] == "pass"


def test_verify_flags_bad_extra_file(tmp_path, capsys):
    bad = tmp_path / "bad.lie"
    bad.write_text("basis e f h\nbracket e f = h\nbracket h e = 2 e\nbracket h f = -1 f\n")
    code, _, _ = run(capsys, "verify", str(bad), "--suite", "a2")
    assert code == 1
