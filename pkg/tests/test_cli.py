import json

import pytest

from drinfeld.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


MODULE = json.dumps({"field": {"p": 3}, "type": "drinfeld", "coeffs": [1, 2]})


def test_construct(capsys):
    code, out = run_json(capsys, "construct", "--module", MODULE)
    assert code == 0
    assert out["dimension"] == 1 and out["rank"] == 2 and len(out["matrices"]) == 3


def test_construct_from_file(capsys, tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"type": "g_n", "coeffs": [1, 1], "n": 1}))
    code, out = run(capsys, "construct", "--q", "2", "--module", str(p))
    assert code == 0 and out.startswith("g_n: dimension 3")


def test_zeta_matches_frozen(capsys):
    code, out = run_json(capsys, "zeta", "--q", "2", "--n", "1", "--prec", "15")
    assert code == 0
    res = out["result"]
    assert res["precision"] == 15
    assert [c[0] if c else 0 for c in res["coeffs"]][:3] == [1, 0, 1]


def test_json_is_deterministic(capsys):
    a = run(capsys, "taelman", "--q", "3", "--max-deg", "3", "--prec", "6", "--format", "json")
    b = run(capsys, "taelman", "--q", "3", "--max-deg", "3", "--prec", "6", "--format", "json")
    assert a == b


def test_unstable_product_exits_one(capsys):
    code, out = run_json(capsys, "taelman", "--q", "2", "--max-deg", "2", "--prec", "12")
    assert code == 1 and out["result"]["stabilized"] is False


def test_goss_and_dual(capsys):
    code, out = run_json(capsys, "goss", "--q", "2", "--n", "2", "--max-deg", "7", "--prec", "6")
    assert code == 0
    code, out = run_json(capsys, "goss", "--dual", "--module", MODULE, "--max-deg", "2", "--prec", "4")
    assert out["command"] == "goss"


def test_localfactor(capsys):
    code, out = run_json(capsys, "localfactor", "--module", MODULE, "--beta", "0,1")
    assert code == 0
    (rec,) = out["factors"]
    assert rec["c"] == 1 and rec["qpoly"] == [[[0], [1]], [[2]], [[1]]]


def test_localfactor_cache_fault(capsys, tmp_path):
    cache = str(tmp_path / "c.jsonl")
    code, _ = run(capsys, "localfactor", "--q", "2", "--max-deg", "1", "--cache", cache)
    assert code == 0
    lines = open(cache).read().splitlines()
    rec = json.loads(lines[0])
    rec["count_G"] = [[0], [0], [1]]
    with open(cache, "a") as fh:
        fh.write(json.dumps(rec) + "\n")
    code, out = run(capsys, "verify", "--q", "2", "--suite", "omega", "--cache", cache)
    assert code == 1 and "differs from count_G" in out


def test_verify_suite(capsys):
    code, out = run_json(capsys, "verify", "--q", "3", "--suite", "omega")
    assert code == 0 and out["passed"] and len(out["checks"]) == 2


@pytest.mark.parametrize("argv", [
    ["zeta", "--q", "6"],
    ["zeta", "--p", "2", "--q", "8", "--m", "2"],
    ["zeta", "--q", "2", "--n", "0"],
    ["zeta", "--q", "2", "--prec", "0"],
    ["construct", "--q", "2"],
    ["construct", "--module", "{broken"],
    ["construct", "--q", "2", "--module", json.dumps({"field": {"p": 3}, "coeffs": [1, 1]})],
    ["localfactor", "--q", "2", "--beta", "1,1,1,1"],
    ["verify", "--suite", "nope"],
    ["goss", "--q", "2"],
])
def test_usage_errors_exit_two(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert "error" in capsys.readouterr().err
