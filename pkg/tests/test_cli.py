import json
import subprocess
import sys

import pytest

from rank1games.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_json(capsys, tmp_path):
    path = tmp_path / "g.json"
    code, out, _ = run(["generate", "--p", "3", "--n", "4", "--output", str(path)], capsys)
    assert code == 0
    obj = json.loads(out)
    assert len(obj["A"]) == 4
    assert path.read_text() == out


def test_generate_nfg(capsys, tmp_path):
    path = tmp_path / "g.nfg"
    code, out, _ = run(["generate", "--n", "2", "--format", "nfg-text", "--output", str(path)], capsys)
    assert code == 0
    assert path.read_text().split("\n\n")[1].split() == ["9", "9", "0", "54", "54", "0", "81", "81"]


def test_enumerate_with_oracle(capsys):
    code, out, _ = run(["enumerate", "--p", "3", "--n", "4", "--check", "oracle"], capsys)
    assert code == 0
    assert "constructed=15 oracle=15 match=true" in out


def test_enumerate_json(capsys):
    code, out, _ = run(["enumerate", "--n", "3", "--check", "nash", "--format", "json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["constructed"] == 7 and rep["match"] is True
    assert rep["schema"] == "rank1games.report/1"


def test_murty_max_unbounded(capsys):
    code, out, _ = run(["murty", "--n", "2", "--sense", "max"], capsys)
    assert code == 0
    assert "unbounded for all lambda" in out


def test_murty_min(capsys):
    code, out, _ = run(["murty", "--n", "3", "--format", "json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["agrees"] and rep["segment_count"] == 2 and rep["grid"]["points"] >= 50
    assert "caveat" in rep


def test_construct(capsys):
    code, out, _ = run(["construct", "--n", "3", "--support", "1,3", "--format", "json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["is_nash"]
    assert rep["equilibrium"]["y"] == ["63/64", "0", "1/64"]
    code2, out2, _ = run(["construct", "--n", "3", "--support-mask", "5", "--format", "json"], capsys)
    assert out2 == out


def test_construct_zero_based_labels(capsys):
    code, out, _ = run(["construct", "--n", "2", "--variant", "zero-based-normalized", "--support", "0,1",
                        "--format", "json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["equilibrium"]["support_x"] == [0, 1]


def test_oracle_and_nondegenerate_from_file(capsys, tmp_path):
    path = tmp_path / "coord.json"
    path.write_text(json.dumps({"A": [["1", "0"], ["0", "1"]], "B": [["1", "0"], ["0", "1"]]}))
    code, out, _ = run(["oracle", "--game", str(path), "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["count"] == 3
    code, out, _ = run(["nondegenerate", "--game", str(path)], capsys)
    assert code == 0 and "nondegenerate=true" in out


def test_verify(capsys, tmp_path):
    prof = tmp_path / "p.json"
    prof.write_text(json.dumps({"x": ["3/4", "1/4"], "y": ["3/4", "1/4"]}))
    code, out, _ = run(["verify", "--n", "2", "--profile", str(prof)], capsys)
    assert code == 0 and "is_equilibrium=true" in out
    prof.write_text(json.dumps({"x": ["1", "0"], "y": ["0", "1"]}))
    code, out, _ = run(["verify", "--n", "2", "--profile", str(prof), "--format", "json"], capsys)
    rep = json.loads(out)
    assert code == 1 and rep["violation"] == {"player": "row", "strategy": 2, "gap": "27"}


def test_rank_lambda_symmetrize_pairmap(capsys):
    assert run(["rank", "--p", "5", "--n", "6"], capsys)[0] == 0
    code, out, _ = run(["lambda", "--n", "4"], capsys)
    assert code == 0 and "distinct=true" in out
    code, out, _ = run(["symmetrize", "--n", "2", "--format", "nfg-text"], capsys)
    assert code == 0 and "{ 4 4 }" in out
    code, out, _ = run(["pair-map", "--n", "2"], capsys)
    assert code == 0 and "paired=9  nash_passed=9  distinct=true" in out
    code, out, _ = run(["pair-map", "--n", "3", "--support", "1,3", "--support2", "2"], capsys)
    assert code == 0 and "paired=1" in out


@pytest.mark.parametrize("args", [
    ["construct", "--n", "2"],
    ["generate", "--p", "2"],
    ["enumerate", "--n", "0"],
    ["construct", "--n", "2", "--support", "1,5"],
    ["construct", "--n", "2", "--support", "0,1"],
    ["construct", "--n", "2", "--support", "1", "--support-mask", "1"],
    ["rank", "--format", "nfg-text"],
    ["oracle", "--check", "oracle"],
    ["verify", "--n", "2"],
    ["pair-map", "--support", "1"],
])
def test_usage_errors(args, capsys):
    code, _, err = run(args, capsys)
    assert code == 2 and "usage" in err


def test_module_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.nfg"
    bad.write_text('NFG 1 R "x" { "P1" "P2" } { 2 2 }\n\n1 2 3')
    code, out, err = run(["oracle", "--game", str(bad), "--game-format", "nfg-text"], capsys)
    assert code == 3 and "ParseError" in err
    code, out, _ = run(["oracle", "--game", str(bad), "--game-format", "nfg-text", "--format", "json"], capsys)
    rep = json.loads(out)
    assert code == 3 and rep["error"] == "ParseError" and rep["line"] == 3


def test_size_cap_error(capsys):
    code, _, err = run(["enumerate", "--n", "4", "--cap", "3"], capsys)
    assert code == 3 and "SizeError" in err


@pytest.mark.parametrize("args", [
    ["enumerate", "--n", "3", "--check", "oracle", "--format", "json"],
    ["murty", "--n", "2"],
    ["generate", "--n", "3", "--format", "nfg-text"],
])
def test_subprocess_determinism(args):
    cmd = [sys.executable, "-m", "rank1games.cli", *args]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
