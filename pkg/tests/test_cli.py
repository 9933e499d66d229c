import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from expolab.bundled import program_dir
from expolab.cli import run
from expolab.reproduce import NEW_BOUND_LINE

ROOT = Path(__file__).resolve().parents[1]


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(autouse=True)
def at_repo_root(monkeypatch):
    monkeypatch.chdir(ROOT)


def test_optimize_in2(capsys):
    code, out, _ = call(capsys, "optimize", "programs/in2_holomorphic.opt")
    assert code == 0
    assert out.startswith("optimum = -1/22 (-0.0454545")


def test_optimize_json_is_exact(capsys):
    code, out, _ = call(capsys, "optimize", "programs/in1_maass.opt", "--json")
    data = json.loads(out)
    assert code == 0 and data["optimum"] == "-5/152" and data["branches_total"] == 48
    assert all(isinstance(v, str) for v in data["witness"].values())


def test_optimize_missing_file(capsys):
    code, _, err = call(capsys, "optimize", "missing.opt")
    assert code == 2 and "missing.opt" in err


def test_optimize_syntax_error_is_usage_error(capsys, tmp_path):
    bad = tmp_path / "bad.opt"
    bad.write_text("vars x\nbound max(x, )\n")
    code, _, err = call(capsys, "optimize", str(bad))
    assert code == 2 and "line 2" in err


@pytest.mark.parametrize("argv", [["frobnicate"], ["tau"], ["tau", "5", "--bogus"], []])
def test_usage_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 2


@pytest.mark.parametrize("argv, expect", [
    (["tau", "6"], "-6048"),
    (["lambda", "1"], "1.0"),
    (["kloosterman", "0", "0", "7"], "6"),
    (["weight", "--x", "1.25"], "1.0"),
    (["weight", "--x", "2"], "0.0"),
    (["weight-fourier", "--y", "0"], "0.766068"),
])
def test_scalar_commands(capsys, argv, expect):
    code, out, _ = call(capsys, *argv)
    assert code == 0 and out.startswith(expect)


def test_kloosterman_rejects_composite(capsys):
    assert call(capsys, "kloosterman", "1", "1", "9")[0] == 2


def test_certify(capsys):
    code, out, _ = call(capsys, "certify", "programs/in1_maass.opt")
    assert code == 0 and "attains -5/152: True" in out
    code, out, _ = call(capsys, "certify", "programs/in1_maass.opt", "--claimed", "0")
    assert code == 1


def test_verify_commands(capsys):
    assert call(capsys, "verify-epm", "--q", "5", "--m", "4", "--n", "4", "--sign", "+")[0] == 0
    assert call(capsys, "verify-epm", "--q", "11", "--m", "8", "--n", "32", "--sign", "-")[0] == 0
    code, out, _ = call(capsys, "verify-poisson", "--q", "101", "--n1", "8", "--n2", "16", "--m", "32",
                        "--sign", "+", "--kcut", "64")
    assert code == 0 and "PASS" in out
    assert call(capsys, "verify-epm", "--q", "5", "--m", "4", "--n", "4", "--sign", "x")[0] == 2


def test_wilton_and_scan(capsys):
    code, out, _ = call(capsys, "wilton", "--nmax", "256", "--grid", "16")
    assert code == 0 and "R(N)" in out
    code, out, _ = call(capsys, "scan", "e-bound", "--q", "11", "--total", "64", "--json")
    assert code == 0 and len(json.loads(out)["rows"]) > 0


@pytest.mark.parametrize("argv", [
    ["optimize", "programs/in3_ngeqm.opt", "--json", "--witness"],
    ["verify-poisson", "--q", "53", "--n1", "8", "--n2", "16", "--m", "32", "--sign", "-", "--json"],
    ["wilton", "--nmax", "512", "--json"],
    ["reproduce", "--only", "optimizer", "oracle", "--json"],
])
def test_json_deterministic(capsys, argv):
    first = call(capsys, *argv)
    second = call(capsys, *argv)
    assert first[0] == second[0] == 0
    assert first[1] == second[1]
    json.loads(first[1])


def test_seed_from_env(capsys, monkeypatch):
    monkeypatch.setenv("SEED", "77")
    code, out, _ = call(capsys, "reproduce", "--only", "exponents", "--json")
    assert code == 0 and json.loads(out)["seed"] == 77


def test_reproduce_unknown_criterion(capsys):
    assert call(capsys, "reproduce", "--only", "nonsense")[0] == 2


def test_reproduce_detects_tampering(capsys, tmp_path):
    for f in program_dir().glob("*.opt"):
        shutil.copy(f, tmp_path / f.name)
    target = tmp_path / "in1_maass.opt"
    lines = target.read_text().splitlines()
    target.write_text("\n".join(ln for ln in lines if ln.strip() != NEW_BOUND_LINE) + "\n")
    code, out, _ = call(capsys, "reproduce", "--programs", str(tmp_path), "--only", "optimizer")
    assert code == 1
    assert "FAIL" in out and "in1_maass: -1/64 (want -5/152)" in out


def test_entry_point_subprocess():
    exe = shutil.which("expolab")
    cmd = [exe] if exe else [sys.executable, "-m", "expolab"]
    out = subprocess.run(cmd + ["tau", "2"], capture_output=True, text=True, cwd=ROOT)
    assert out.returncode == 0 and out.stdout.strip() == "-24"
