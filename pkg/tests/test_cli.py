import json
from pathlib import Path

from ffsubspace.cli import main

SCENARIO = str(
    Path(__file__).resolve().parents[1] / "src/ffsubspace/scenarios/conic.json"
)


def test_check_ok(capsys, tmp_path):
    report = tmp_path / "out.json"
    assert main(["check", SCENARIO, "--format", "json", "--report", str(report)]) == 0
    data = json.loads(report.read_text())
    assert data["position"]["in_position"] is True
    assert json.loads(capsys.readouterr().out) == data


def test_check_missing_file(capsys):
    assert main(["check", "/no/such/file.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_check_schema_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"ambient_dim": 2}')
    assert main(["check", str(bad)]) == 2
    assert "/variety" in capsys.readouterr().err


def test_check_violation_exit_code(tmp_path, capsys):
    scenario = {
        "ambient_dim": 1,
        "variety": {"kind": "projective_space"},
        "divisors": [{"poly": "X1", "degree": 1}] * 4,
        "N": 1,
        "places": ["t", "inf"],
        "epsilon": "1",
        "points": [["1", "t"]],
    }
    path = tmp_path / "degenerate.json"
    path.write_text(json.dumps(scenario))
    assert main(["check", str(path)]) == 1
    out = capsys.readouterr().out
    assert "Violation" in out and "PositionCheckFailed" in out


def test_hilbert_command(capsys):
    assert main(["hilbert", "--gens", "X0*X2 - X1^2", "--m", "3"]) == 0
    out = capsys.readouterr().out
    assert "H(m) = 7" in out


def test_bounds_command(capsys, tmp_path):
    report = tmp_path / "bounds.json"
    assert main(
        ["bounds", "a-eps", "--n", "1", "--delta", "2", "--d", "1", "--eps", "1",
         "--report", str(report)]
    ) == 0
    out = capsys.readouterr().out
    assert "a_eps = " in out and "pass" in out
    assert json.loads(report.read_text())["scan_ok"] is True


def test_chow_command(capsys, tmp_path):
    assert main(["chow", "--input", SCENARIO]) == 0
    out = capsys.readouterr().out
    assert "stated bound 25" in out and "combinatorial monomial count 36" in out


def test_chow_command_bare_variety(capsys, tmp_path):
    path = tmp_path / "variety.json"
    path.write_text(
        json.dumps({"ambient_dim": 2, "kind": "hypersurface", "F": "X0*X2 - X1^2"})
    )
    assert main(["chow", "--input", str(path)]) == 0
    out = capsys.readouterr().out
    assert "degree 2 per block" in out


def test_constants_command(capsys, tmp_path):
    inputs = {
        "n": 1, "delta": 2, "M": 2, "N": 2, "q": 4, "d_i": [1, 1, 1, 1],
        "epsilon": "1", "s_card": 2, "s_degree": 2, "c1_prime": "7",
        "m": 12, "H_table": {str(k): 2 * k + 1 for k in range(1, 13)},
    }
    path = tmp_path / "inputs.json"
    path.write_text(json.dumps(inputs))
    assert main(["constants", "--inputs", str(path)]) == 0
    out = capsys.readouterr().out
    assert "10240000002304" in out  # b(12, 1, 2, 2) = 48^2 + 20^10
    assert "c_prime_eps" in out


def test_filtration_command(capsys):
    assert main(
        ["filtration", "--gens", "", "--num-vars", "2", "--m", "4",
         "--q-poly", "X0", "--point", "t,1", "--place", "t"]
    ) == 0
    out = capsys.readouterr().out
    assert "exponent sum 10" in out and "stated closed form 9" in out
    assert "lhs 10 >= rhs 9: ok" in out


def test_position_command(capsys):
    assert main(["position", "--file", SCENARIO, "--N", "1"]) == 0
    out = capsys.readouterr().out
    assert "NOT certified" in out
    assert "[0, 1]: NonemptyAtCap" in out
