import json

import pytest

from cohomkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mult_text(capsys):
    code, out, _ = run(capsys, "mult", "(2,1,1)", "(2,1)")
    assert code == 0
    assert out.strip() == "(4,2,1) + 3(4,1,1,1) + 2(3,3,1) + 2(3,2,2) + 3(3,2,1,1) + 6(2,2,2,1) + 6(2,2,1,1,1)"


def test_mult_json_and_mod(capsys):
    code, out, _ = run(capsys, "mult", "(1)", "(1)", "--format", "json")
    assert json.loads(out) == {"terms": [{"parts": [2], "coeff": 1}, {"parts": [1, 1], "coeff": 2}]}
    code, out, _ = run(capsys, "mult", "(1)", "(1)", "--mod", "2")
    assert out.strip() == "(2)"


def test_mult_accepts_sums_and_power_notation(capsys):
    code, out, _ = run(capsys, "mult", "(1) + (2)", "((1)^1)")
    assert code == 0 and "(3)" in out


def test_invalid_input_exit_2(capsys):
    assert run(capsys, "mult", "(1,2)", "(1)")[0] == 2
    assert run(capsys, "steenrod", "(1)", "--p", "4", "--i", "1")[0] == 2
    assert run(capsys, "sg-check", "{not json")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == 2


def test_steenrod(capsys):
    code, out, _ = run(capsys, "steenrod", "(1)", "--p", "3", "--i", "1")
    assert code == 0 and out.strip() == "(3)"


def test_verify_bp(capsys):
    code, out, _ = run(capsys, "verify-bp", "--p", "5", "--k", "6", "--i", "1")
    assert code == 0 and "coefficient 1" in out
    code, out, _ = run(capsys, "verify-bp", "--p", "5", "--k", "6", "--i", "1", "--format", "json")
    assert json.loads(out)["coefficient"] == 1


def test_verify_commands(capsys):
    assert run(capsys, "verify-wu", "--k", "6")[0] == 0
    assert run(capsys, "verify-adem", "--p", "2", "--a", "1", "--b", "2", "--weight", "4")[0] == 0
    assert run(capsys, "verify-sl", "--p", "3", "--weight", "6")[0] == 0
    assert run(capsys, "verify-adem", "--p", "2", "--a", "4", "--b", "1")[0] == 2


def test_decompose_json(capsys):
    code, out, _ = run(capsys, "decompose-chern", "--p", "3", "--k", "4", "--format", "json")
    js = json.loads(out)
    assert code == 0 and js["verified"] and js["op_exponent"] == 1 and js["source"] == 2


def test_descent(capsys):
    code, out, _ = run(capsys, "descent", "--p", "7", "--lam", "8", "--format", "json")
    assert code == 0 and json.loads(out)["witness"] == 3


def test_periodicity_model_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "periodicity", "--model", "cayley_plane", "--format", "json")
    assert json.loads(out)["spectrum"] == [8, 16]
    alg = {"field": "Fp:3", "n": 8, "dims": [1, 0, 0, 0, 1, 0, 0, 0, 1],
           "structure": [{"a": 4, "b": 4, "table": [[[1]]]}]}
    path = tmp_path / "hp2.json"
    path.write_text(json.dumps(alg))
    code, out, _ = run(capsys, "periodicity", "--file", str(path))
    assert code == 0 and "spectrum: 4, 8" in out
    assert run(capsys, "periodicity", "--file", json.dumps(alg))[0] == 0
    assert run(capsys, "periodicity")[0] == 2


def test_classify_weights_table(capsys):
    code, out, _ = run(capsys, "classify-weights", "--format", "table")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 18
    assert [l.split()[0] for l in lines[1:]] == ["4", "5", "5", "5", "6", "6", "6", "6", "7", "7", "7", "7",
                                                 "8", "8", "9", "9", "10"]
    flags = [l.split()[-1] for l in lines[1:]]
    assert flags.count("no") == 2 and flags[7] == "no" and flags[16] == "no"


def test_projective_commands(capsys):
    c = json.dumps({"dim": 2, "points": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]]})
    code, out, _ = run(capsys, "sg-check", c, "--format", "json")
    assert json.loads(out)["kind"] == "ordinary"
    assert run(capsys, "hansen-check", c)[0] == 0
    om = json.dumps({"dim": 2, "points": [[1, 0, 0], [0, 1, 0]]})
    bad = json.dumps({"dim": 2, "points": [[0, 0, 1]]})
    code, out, _ = run(capsys, "s2comb-check", om, bad, "--format", "json")
    assert code == 1 and json.loads(out)["detail"]["condition"] == "i"
    assert run(capsys, "s2comb-check", om, json.dumps({"dim": 2, "points": [[1, 1, 0]]}), "--extended")[0] == 0


def test_triangle_classify(capsys):
    t = {"A": [[1, 0, 0, 0], [1, 0, 1, 0]], "B": [[0, 1, 0, 0], [0, 1, 1, 0]],
         "C": [[1, -1, 0, 0], [1, 1, 1, 0]]}
    code, out, _ = run(capsys, "triangle-classify", json.dumps(t), "--format", "json")
    assert code == 0 and json.loads(out)["kind"] == "type2"
    bad = {"A": [[1, 0, 0, 0]] * 2, "B": [[0, 1, 0, 0]] * 2, "C": [[1, -1, 0, 0]] * 2}
    code, out, _ = run(capsys, "triangle-classify", json.dumps(bad), "--lindep")
    assert code == 1 and "axiom_violation" in out


def test_sweep_weights(capsys):
    code, out, _ = run(capsys, "sweep", "appendix-b")
    assert code == 0
    assert out.splitlines()[0] == "PASS 17 classes, histogram {4:1,5:3,6:4,7:4,8:2,9:2,10:1}, splitting 15/2"


def test_sweep_periodicity_deterministic(capsys):
    first = run(capsys, "sweep", "periodicity")
    second = run(capsys, "sweep", "periodicity")
    assert first == second and first[0] == 0


def test_sweep_rejects_unknown_suite():
    with pytest.raises(SystemExit) as e:
        main(["sweep", "nothing"])
    assert e.value.code == 2
