import json
import subprocess
import sys

import pytest

from matschub.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_analyze(capsys):
    code, data = run(capsys, "analyze", "[25413]")
    assert code == 0
    assert data["command"] == "analyze"
    assert data["dim_Y"] == 5 and data["is_toric"]


def test_bad_permutation_exit_2(capsys):
    code, data = run(capsys, "analyze", "[2213]")
    assert code == 2 and data["error"] == "NotABijection"


def test_triangulate(capsys):
    code, data = run(capsys, "triangulate", "[25413]")
    assert code == 0
    assert data["validation"]["pass"]


def test_subword(capsys):
    code, data = run(capsys, "subword", "[14523]", "--convention", "figure")
    assert code == 0


def test_degenerate_domain(capsys):
    code, data = run(capsys, "degenerate", "[25413]")
    assert code == 2 and data["error"] == "NotOneDominant"
    code, data = run(capsys, "degenerate", "[15342]")
    assert code == 0


def test_oracle(capsys):
    code, data = run(capsys, "oracle", "pipe-dreams", "[1432]")
    assert code == 0 and data["count"] == 5


def test_verify_small(capsys):
    code, data = run(capsys, "verify", "--n", "4")
    assert code == 0 and data["total_failures"] == 0
    assert "convention_audit" in data


def test_verify_limits(capsys):
    code, data = run(capsys, "verify", "--n", "8")
    assert code == 2 and data["error"] == "SizeLimitExceeded"
    code, data = run(capsys, "verify", "--n", "4", "--checks", "nope")
    assert code == 2


def test_parallel_is_deterministic(capsys):
    run(capsys, "verify", "--n", "4", "--checks", "regions,toric,nat_count")
    serial = capsys.readouterr()
    code1 = main(["verify", "--n", "4", "--checks", "regions,toric,nat_count"])
    a = capsys.readouterr().out
    code2 = main(["verify", "--n", "4", "--checks", "regions,toric,nat_count", "--jobs", "2"])
    b = capsys.readouterr().out
    assert code1 == code2 == 0 and a == b


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "matschub", "analyze", "[132]"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["permutation"] == [1, 3, 2]
