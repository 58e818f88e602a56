import json

import pytest

from pgaut import cli


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path / "cache"))
    return tmp_path / "cache"


def test_info(capsys):
    assert cli.main(["info", "3", "3", "1"]) == 0
    out = capsys.readouterr().out
    assert "regime LOW" in out and "|S|=243" in out and "expected |Aut(S)|=13122" in out


def test_info_top_and_n2(capsys):
    assert cli.main(["info", "--p", "3", "--n", "3", "--i", "2"]) == 0
    out = capsys.readouterr().out
    assert "(i = n-1)" in out and "expected |Aut(S)|=1296" in out
    assert cli.main(["info", "3", "2", "1"]) == 0
    assert "n = 2" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [["info", "4", "3", "1"], ["info", "3", "3", "3"], ["info", "3", "3"],
                                  ["info", "3", "3", "1", "--d", "1"], ["verify", "3", "3", "1", "--suite", "x"]])
def test_invalid_params_exit_2(argv):
    assert cli.main(argv) == 2


def test_verify_regime_mismatch(tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["verify", "--suite", "aut-high", "--p", "3", "--n", "3", "--i", "1", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert set(report) == {"params", "constants", "checks", "stats", "version", "seed"}
    assert all(c["status"] == "skipped" and "regime" in c["witness"]["reason"] for c in report["checks"])


def test_verify_appendix(tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["verify", "--suite", "appendix", "3", "3", "1", "--out", str(out)]) == 0
    checks = {c["id"]: c for c in json.loads(out.read_text())["checks"]}
    assert checks["appendix.order"]["witness"]["closure"] == 486


def test_verify_failure_exit_code(tmp_path):
    # the LOW suite at (3,3,1) contains failing displayed relations
    assert cli.main(["verify", "--suite", "aut-low", "3", "3", "1", "--out", str(tmp_path / "r.json")]) == 1


def test_aut_brute_and_cache(capsys, cache_dir):
    assert cli.main(["aut", "--mode", "brute", "3", "3", "1"]) == 0
    assert capsys.readouterr().out.strip() == "13122"
    files = list(cache_dir.iterdir())
    assert len(files) == 1
    first = files[0].read_bytes()
    assert cli.main(["aut", "--mode", "brute", "3", "3", "1"]) == 0
    cap = capsys.readouterr()
    assert cap.out.strip() == "13122" and "(cache)" in cap.err
    assert files[0].read_bytes() == first


def test_aut_closure_342(capsys):
    assert cli.main(["aut", "--mode", "closure", "3", "4", "2", "--cache", "none"]) == 0
    assert capsys.readouterr().out.strip() == "78732"


def test_resource_guard_exit_3():
    assert cli.main(["aut", "--mode", "brute", "3", "3", "1", "--aut-cap", "100", "--cache", "none"]) == 3


def test_oracle_and_ratio(capsys):
    assert cli.main(["oracle", "3", "3", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["S"]["equal"] and out["U"]["brute_force"] == 486
    assert cli.main(["ratio", "3", "3", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["U"]["ratio"] == "3/2"
