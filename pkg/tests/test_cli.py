import json
import os
import subprocess
import sys

import numpy as np
import pytest

from pathlift import cli
from pathlift.errors import TheoremViolation


def run_json(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if code == 0 else None), err


def roots_of(doc):
    return np.array([r["re"] + 1j * r["im"] for r in doc["roots"]])


def test_solve_inline(capsys):
    code, doc, _ = run_json(capsys, "solve", "--epsilon", "1e-6", "--coeffs", "[-1, 0, 1]")
    assert code == 0
    assert doc["degree"] == 2
    np.testing.assert_allclose(sorted(roots_of(doc).real), [-1, 1], atol=1e-6)
    assert doc["residual"] < 1e-6
    assert doc["K"] == 4 and doc["tau"] > 0
    st = doc["stages"][0]
    for key in ("plm_iterations", "polish_iterations", "quadrants_tried", "evaluations"):
        assert key in st
    assert "remainder_norm" not in st


def test_solve_file_verify_oracle_stats(tmp_path, capsys):
    path = tmp_path / "phi.json"
    path.write_text(json.dumps({"coeffs": [[0.25, 0.1], [0, -0.5], 0.3, [1, 0]],
                                "epsilon": 1e-3}))
    code, doc, _ = run_json(capsys, "solve", "--epsilon", "1e-4", "--input", str(path),
                            "--verify", "--oracle-compare", "--stats")
    assert code == 0
    assert doc["epsilon"] == 1e-4        # the flag wins over the file
    assert doc["verified"] is True
    assert doc["verified_residual"] < 1e-4
    assert doc["oracle_distance"] < 1e-2
    assert "remainder_norm" in doc["stages"][0]


def test_epsilon_from_file(tmp_path, capsys):
    path = tmp_path / "phi.json"
    path.write_text(json.dumps({"coeffs": [[-0.25, 0], 0, 1], "epsilon": 1e-5}))
    code, doc, _ = run_json(capsys, "solve", "--input", str(path))
    assert code == 0 and doc["epsilon"] == 1e-5


def test_leading_coefficient_is_divided_out(capsys):
    code, doc, _ = run_json(capsys, "solve", "--epsilon", "1e-6", "--coeffs", "[-8, 0, 2]")
    assert code == 0
    assert doc["leading_coefficient"] == {"re": 2.0, "im": 0.0}
    np.testing.assert_allclose(sorted(roots_of(doc).real), [-2, 2], atol=1e-5)


def test_root_precision(capsys):
    code, doc, _ = run_json(capsys, "solve", "--root-precision", "1e-2",
                            "--coeffs", "[0.1, [0, 0.2], -0.3, 1]", "--oracle-compare")
    assert code == 0
    assert doc["epsilon"] == pytest.approx((1e-2 / 24) ** 3)
    assert doc["oracle_distance"] <= 1e-2


def test_tau_underflow_exit(capsys):
    coeffs = json.dumps([1] + [0] * 19 + [1])
    code, _, err = run_json(capsys, "solve", "--epsilon", "1e-300", "--coeffs", coeffs)
    assert code == cli.EXIT_TAU
    assert "d <= 24" in err


@pytest.mark.parametrize("argv", [
    ["solve", "--epsilon", "1e-4", "--coeffs", "[1, 2"],
    ["solve", "--coeffs", "[-1, 0, 1]"],
    ["solve", "--epsilon", "-1", "--coeffs", "[-1, 0, 1]"],
    ["solve", "--epsilon", "1e-4", "--coeffs", "[\"a\", 1]"],
    ["solve", "--epsilon", "1e-4", "--coeffs", "[5]"],
    ["solve", "--epsilon", "1e-4", "--input", "/nonexistent/phi.json"],
    ["solve", "--epsilon", "1e-4"],
    ["frobnicate"],
])
def test_input_errors(capsys, argv):
    code, _, err = run_json(capsys, *argv)
    assert code == cli.EXIT_INPUT
    assert "input error" in err


def test_solver_failure_exit(monkeypatch, capsys):
    def boom(phi, eps):
        raise TheoremViolation("no quadrant", None)
    monkeypatch.setattr(cli, "solve", boom)
    code, _, err = run_json(capsys, "solve", "--epsilon", "1e-4", "--coeffs", "[-1, 0, 1]")
    assert code == cli.EXIT_SOLVER
    assert "TheoremViolation" in err


def test_dumps_uses_17_digits():
    text = cli.dumps({"x": 0.1, "n": 3, "ok": True, "v": [1 / 3]})
    assert "0.10000000000000001" in text
    assert "0.33333333333333331" in text
    assert json.loads(text)["v"][0] == 1 / 3


def _cli(args, **env):
    return subprocess.run([sys.executable, "-m", "pathlift", *args], capture_output=True,
                          text=True, env={**os.environ, **env}, check=False)


def test_repeated_runs_are_bitwise_identical():
    args = ["solve", "--epsilon", "1e-8", "--stats",
            "--coeffs", "[[0.3, -0.1], 0.2, [0, 0.5], -0.7, 0.1, 1]"]
    a, b = _cli(args), _cli(args)
    assert a.returncode == 0
    assert a.stdout == b.stdout


def test_numpy_backend_flag():
    out = _cli(["solve", "--epsilon", "1e-6", "--coeffs", "[-1, 0, 1]"],
               PATHLIFT_DISABLE_NUMBA="1")
    assert out.returncode == 0
    assert json.loads(out.stdout)["backend"] == "numpy"
