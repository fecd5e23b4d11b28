import json
import subprocess
import sys

import numpy as np
import pytest

CANONICAL_G = "tanh(x)+0.1*cos(2*pi*t/3)"


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "perdiff", *args],
        capture_output=True, text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def write_problem(path, b, c, N, g, seed=None):
    data = {"b": b, "c": c, "N": N, "g": g}
    if seed is not None:
        data["seed"] = seed
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def dim0_file(tmp_path):
    return write_problem(tmp_path / "p0.json", 0, 2, 3, CANONICAL_G)


@pytest.fixture
def dim1_file(tmp_path):
    return write_problem(tmp_path / "p1.json", -3, 2, 3, CANONICAL_G)


@pytest.fixture
def dim2_file(tmp_path):
    return write_problem(tmp_path / "p2.json", 1, 1, 3, CANONICAL_G)


def test_classify_outputs(dim0_file, dim1_file, dim2_file):
    code, out, _ = run_cli("classify", dim2_file)
    assert code == 0
    data = json.loads(out)
    assert data["dim"] == 2
    assert data["theta"] == pytest.approx(2.0943951023931957)
    assert data["r_int"] == 1
    assert data["in_U"] is True
    assert data["version"] == "0.1.0"
    assert data["input"]["g"] == CANONICAL_G

    assert json.loads(run_cli("classify", dim0_file)[1])["dim"] == 0
    d1 = json.loads(run_cli("classify", dim1_file)[1])
    assert d1["dim"] == 1
    assert d1["kernel_basis"][0][0] == [1.0, 1.0]


def test_solve_all_regimes(dim0_file, dim1_file, dim2_file):
    for path, regime in [(dim0_file, 0), (dim1_file, 1), (dim2_file, 2)]:
        code, out, _ = run_cli("solve", path)
        assert code == 0
        data = json.loads(out)
        assert data["regime"] == regime
        assert len(data["y"]) == 3
        assert data["residual_sup"] <= 1e-9
        assert data["oracle_verified"] is True
    data = json.loads(run_cli("solve", dim2_file, "--radius", "50")[1])
    assert data["winding"] == 1


def test_solve_zero_nonlinearity(tmp_path):
    for b, c in [(0, 2), (-3, 2), (1, 1)]:
        path = write_problem(tmp_path / "z.json", b, c, 3, "0")
        code, out, _ = run_cli("solve", path)
        assert code == 0
        data = json.loads(out)
        assert data["y"] == [0.0, 0.0, 0.0]


def test_solve_failure_exit_code(tmp_path):
    # no periodic solution: the resonant constant forcing has no zero mean
    path = write_problem(tmp_path / "bad.json", -3, 2, 3, "2+tanh(x)")
    code, out, _ = run_cli("solve", path)
    assert code == 3
    data = json.loads(out)
    assert "error" in data


def test_verify_roundtrip(tmp_path, dim1_file):
    code, out, _ = run_cli("solve", dim1_file)
    y = json.loads(out)["y"]
    sol = tmp_path / "sol.json"
    sol.write_text(json.dumps({"y": y}))
    code, out, _ = run_cli("verify", dim1_file, str(sol))
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True and data["residual_sup"] <= 1e-9

    y_bad = list(y)
    y_bad[0] += 0.1
    sol.write_text(json.dumps({"y": y_bad}))
    code, out, _ = run_cli("verify", dim1_file, str(sol))
    assert code == 3
    data = json.loads(out)
    assert data["passed"] is False and data["residual_sup"] >= 0.05


def test_verify_zero_solution(tmp_path):
    path = write_problem(tmp_path / "p.json", -3, 2, 3, "tanh(x)")
    sol = tmp_path / "zero.json"
    sol.write_text(json.dumps({"y": [0.0, 0.0, 0.0]}))
    code, out, _ = run_cli("verify", path, str(sol))
    assert code == 0 and json.loads(out)["passed"] is True


def test_verify_length_mismatch(tmp_path, dim1_file):
    sol = tmp_path / "short.json"
    sol.write_text(json.dumps({"y": [0.0, 0.0]}))
    code, _, err = run_cli("verify", dim1_file, str(sol))
    assert code == 2
    assert "3" in err


def test_check_exit_codes(tmp_path, dim0_file, dim1_file, dim2_file):
    assert run_cli("check", dim0_file, "--theorem", "thm1")[0] == 0
    assert run_cli("check", dim1_file, "--theorem", "thm1")[0] == 0
    assert run_cli("check", dim2_file, "--theorem", "thm2")[0] == 0
    # failing hypothesis: cubic growth with r too small
    path = write_problem(tmp_path / "fail.json", -3, 2, 3, "x^3")
    code, out, _ = run_cli("check", path, "--theorem", "thm1", "--r", "1", "--zhat", "5")
    assert code == 4
    assert json.loads(out)["overall"] is False
    # corollary on the logfade nonlinearity
    path = write_problem(tmp_path / "cor.json", 1.2, 1, 3, "logfade(x)")
    code, out, _ = run_cli("check", path, "--theorem", "cor", "--R", "5")
    data = json.loads(out)
    c1 = [c for c in data["conditions"] if c["id"] == "C1*"][0]
    assert c1["passed"] is True


def test_scan_csv(tmp_path):
    out_file = tmp_path / "scan.csv"
    code, _, _ = run_cli("scan", "--b-range", "1:1:1", "--c", "1",
                         "--N-list", "3", "--out", str(out_file))
    assert code == 0
    lines = out_file.read_text().strip().split("\n")
    assert lines[0] == "b,c,N,dim,theta,in_U,r_int,gcd"
    cells = lines[1].split(",")
    assert cells[:4] == ["1", "1", "3", "2"]
    assert cells[5] == "true" and cells[6] == "1" and cells[7] == "1"

    code, out, _ = run_cli("scan", "--b-range", "0:0:1", "--c", "2", "--N-list", "3")
    assert out.strip().split("\n")[1].split(",")[3] == "0"

    code, out, _ = run_cli("scan", "--b-range", "0:1:0", "--c", "1", "--N-list", "3")
    assert code == 0
    assert out == "b,c,N,dim,theta,in_U,r_int,gcd\n"


def test_parse_error_exits(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli("classify", str(bad))[0] == 2
    assert run_cli("classify", str(tmp_path / "missing.json"))[0] == 2
    bad.write_text(json.dumps({"b": 1, "c": 1, "N": 3, "g": "foo(x)"}))
    assert run_cli("classify", str(bad))[0] == 2
    bad.write_text(json.dumps({"b": 1, "c": 0, "N": 3, "g": "x"}))
    assert run_cli("classify", str(bad))[0] == 2


def test_usage_error_exits():
    assert run_cli("scan", "--b-range", "oops", "--c", "1", "--N-list", "3")[0] == 1


def test_float_serialization_17_digits(dim1_file):
    _, out, _ = run_cli("solve", dim1_file)
    data = json.loads(out)
    # parsing the printed text and re-reading gives the same doubles
    y = np.array(data["y"])
    again = np.array(json.loads(out)["y"])
    np.testing.assert_array_equal(y, again)
    assert "e-" in out or "." in out
