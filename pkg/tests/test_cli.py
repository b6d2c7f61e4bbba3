import csv
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from intersys.cli import main

GOLDEN = Path(__file__).parent / "golden"
INPUTS = GOLDEN / "inputs"

GOLDEN_CASES = {
    "two_agent_w0_w0.json": ["two-agent", "--w1", "0", "--w2", "0"],
    "hadamard_ket0.json": ["transform", "--kind", "hadamard", str(INPUTS / "ket0.json")],
    "shapley_two_player.json": ["shapley", str(INPUTS / "two_player_game.json")],
}


def run_cli(*args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "intersys", *args], input=stdin, capture_output=True, text=True, check=False
    )
    return proc.returncode, proc.stdout, proc.stderr


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_and_byte_stable(name):
    first = run_cli(*GOLDEN_CASES[name])
    second = run_cli(*GOLDEN_CASES[name])
    assert first[0] == 0, first[2]
    assert first[1] == second[1]
    assert first[1] == (GOLDEN / name).read_text()


def test_golden_values(capsys):
    assert main(GOLDEN_CASES["two_agent_w0_w0.json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["max_amplitude"] == 1.0
    assert out["period"] == pytest.approx(math.pi, abs=1e-11)
    assert main(GOLDEN_CASES["hadamard_ket0.json"]) == 0
    assert json.loads(capsys.readouterr().out)["result"] == pytest.approx([1 / math.sqrt(2)] * 2, abs=1e-12)
    assert main(GOLDEN_CASES["shapley_two_player.json"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == [1.5, 0.5]


def test_stdin_input():
    code, out, _ = run_cli("shapley", "-", stdin=(INPUTS / "two_player_game.json").read_text())
    assert code == 0 and json.loads(out)["value"] == [1.5, 0.5]


def test_schema_error_exit_code(capsys):
    assert main(["shapley", str(INPUTS / "ket0.json")]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "schema" and err["field"] == "kind"


def test_precondition_error_exit_code(capsys):
    assert main(["two-agent", "--w1", "1.5", "--w2", "0"]) == 3
    assert json.loads(capsys.readouterr().err)["error"] == "precondition"


def test_missing_file(capsys, tmp_path):
    assert main(["spectrum", str(tmp_path / "none.json")]) == 2
    assert json.loads(capsys.readouterr().err)["field"] == "path"


def test_decompose_and_spectrum(tmp_path, capsys):
    a = write(tmp_path, "a.json", {"kind": "matrix", "data": [[1, 2], [0, 3]]})
    assert main(["decompose", a]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["hermitian"] == [[[1.0, 0.0], [1.0, 1.0]], [[1.0, -1.0], [3.0, 0.0]]]
    assert out["pythagoras_residual"] < 1e-12
    assert main(["spectrum", a]) == 0
    lam = json.loads(capsys.readouterr().out)["eigenvalues"]
    assert lam == pytest.approx([2 + math.sqrt(3), 2 - math.sqrt(3)])
    h = write(tmp_path, "h.json", {"kind": "matrix", "data": [[1, [0, 1]], [[0, -1], 1]]})
    assert main(["spectrum", h]) == 0
    assert json.loads(capsys.readouterr().out)["eigenvalues"] == pytest.approx([2, 0])
    bad = write(tmp_path, "b.json", {"kind": "matrix", "data": [[1, [0, 1]], [[0, 1], 1]]})
    assert main(["spectrum", bad]) == 2


def test_measure(tmp_path, capsys):
    f = write(tmp_path, "f.json", {"kind": "matrix", "data": [[1, 0], [0, 2]]})
    a = write(tmp_path, "a.json", {"kind": "matrix", "data": [[0, 1], [3, 4]]})
    assert main(["measure", f, a]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == 8.0 and out["spectral_value"] == pytest.approx(8.0)
    assert out["total_mass"] == pytest.approx(2.0)


@pytest.mark.parametrize("kind", ["zeta", "moebius", "hadamard", "banzhaf", "fourier"])
def test_transform_roundtrip(kind, capsys):
    assert main(["transform", "--kind", kind, "--roundtrip", str(INPUTS / "two_player_game.json")]) == 0
    assert json.loads(capsys.readouterr().out)["roundtrip_residual"] < 1e-12


def test_transform_zeta_values(capsys):
    assert main(["transform", "--kind", "zeta", str(INPUTS / "two_player_game.json")]) == 0
    assert json.loads(capsys.readouterr().out)["result"] == [0, 1, 0, 3]


def test_game_eisert(tmp_path, capsys):
    g = write(tmp_path, "g.json", {"kind": "decision_game"})
    assert main(["game", "eisert", g, "--table", "--nash"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["strategies"] == [["I", "pauli1", "pauli2"]] * 2
    assert out["payoffs"][1][1] == [3.0, 3.0]
    assert out["nash_equilibria"] == [["pauli1", "pauli1"]]
    assert out["nash_on_pareto_front"] == [["pauli1", "pauli1"]]
    classical = write(tmp_path, "c.json", {"kind": "decision_game", "initializer": "I", "strategies": [["I", "pauli2"]] * 2})
    assert main(["game", "eisert", classical, "--nash"]) == 0
    assert json.loads(capsys.readouterr().out)["nash_equilibria"] == [["pauli2", "pauli2"]]


def test_game_payoffs_from_config(tmp_path, capsys):
    g = write(tmp_path, "g.json", {"kind": "decision_game", "initializer": "I", "strategies": [["I", "pauli2"]] * 2})
    cfg = write(tmp_path, "cfg.json", {"payoffs": {"00": [1, 1], "01": [0, 0], "10": [0, 0], "11": [2, 2]}})
    assert main(["game", "eisert", g, "--table", "--config", cfg]) == 0
    assert json.loads(capsys.readouterr().out)["payoffs"][1][1] == [2.0, 2.0]


def test_evolve_flags_and_document(tmp_path, capsys):
    m = write(tmp_path, "m.json", {"kind": "matrix", "data": [[0.5, 0.5], [0.5, 0.5]]})
    p0 = write(tmp_path, "p.json", {"kind": "decision_state", "coeffs": [1, 0]})
    out_csv = tmp_path / "trace.csv"
    assert main(["evolve", "--operator", m, "--init", p0, "--steps", "200", "--csv", str(out_csv)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["converged"] is True and out["limit"] == [0.5, 0.5]
    rows = list(csv.reader(out_csv.open()))
    assert rows[0] == ["t", "state0", "state1", "mean0", "mean1"] and len(rows) == 202
    doc = write(tmp_path, "e.json", {"kind": "evolution", "operator": [[2, 0], [0, 2]], "init": [1, 1], "steps": 2000})
    assert main(["evolve", doc]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["converged"] is False and out["bounded"] is False
    assert main(["evolve", "--operator", m]) == 2
    assert json.loads(capsys.readouterr().err)["field"] == "init"


def test_two_agent_csv_and_degenerate(tmp_path, capsys):
    out_csv = tmp_path / "p.csv"
    assert main(["two-agent", "--w1", "1", "--w2", "0", "--samples", "11", "--tmax", "1", "--csv", str(out_csv)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["max_amplitude"] == pytest.approx(2 / 3)
    rows = list(csv.DictReader(out_csv.open()))
    assert len(rows) == 11 and float(rows[-1]["t"]) == 1.0
    delta = math.sqrt(0.75)
    assert float(rows[-1]["transition_probability"]) == pytest.approx(2 / 3 * math.sin(delta) ** 2, abs=1e-11)
    assert main(["two-agent", "--w1", "1", "--w2", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["degenerate"] is True and out["period"] is None and out["max_amplitude"] == 0.0
    assert main(["two-agent", "--w1", "0", "--w2", "0", "--csv", "-"]) == 2


def test_two_agent_hbar_flag_beats_config(tmp_path, capsys):
    cfg = write(tmp_path, "cfg.json", {"hbar": 2.0})
    assert main(["two-agent", "--w1", "0", "--w2", "0", "--config", cfg]) == 0
    assert json.loads(capsys.readouterr().out)["period"] == pytest.approx(2 * math.pi, abs=1e-10)
    assert main(["two-agent", "--w1", "0", "--w2", "0", "--config", cfg, "--hbar", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["period"] == pytest.approx(math.pi, abs=1e-10)


def test_two_agent_anticonformist(capsys):
    assert main(["two-agent", "--w1", "0", "--w2", "0", "--variant", "anticonformist"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["exp_minus_i_phi"] == [-1.0, 0.0]
