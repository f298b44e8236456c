import json
import math
import subprocess
import sys

import numpy as np
import pytest

from entk.cli import EXIT_NUMERICAL, EXIT_PARSE, EXIT_VALIDATION, main
from entk.dynamics import ZeroTemperature, bell_decay_closed_form
from entk.io import dumps_state, loads_state, parse_named_state, read_csv
from entk.states import random_density, random_pure_state


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("state", [random_pure_state([2, 3], 1), random_density([2, 2, 2], 3, 2)])
def test_state_file_round_trip_is_bit_exact(state):
    back = loads_state(dumps_state(state))
    a = state.vector if hasattr(state, "vector") else state.matrix
    b = back.vector if hasattr(back, "vector") else back.matrix
    assert np.array_equal(a, b) and back.dims == state.dims


def test_gen_then_load(tmp_path, capsys):
    path = tmp_path / "h.json"
    assert run(capsys, "gen", "hor33", "--a", "0.25", "-o", str(path))[0] == 0
    loaded = loads_state(path.read_text())
    assert np.array_equal(loaded.matrix, parse_named_state("hor33:a=0.25").matrix)
    assert "meta" in json.loads(path.read_text())


def test_reruns_are_byte_identical(capsys):
    a = run(capsys, "bounds", "hor33:a=0.5", "--restarts", "3", "--seed", "5")[1]
    b = run(capsys, "bounds", "hor33:a=0.5", "--restarts", "3", "--seed", "5")[1]
    assert a == b and a


def test_bounds_bell(capsys):
    code, out, _ = run(capsys, "bounds", "bell:phi+", "--upper")
    d = json.loads(out)
    assert code == 0
    for key in ("quasi_pure", "lower_optimized", "upper"):
        assert d[key] == pytest.approx(1, abs=1e-10)


def test_bounds_hor33_detects(capsys):
    d = json.loads(run(capsys, "bounds", "hor33:a=0.3", "--restarts", "2")[1])
    assert d["best_algebraic"] > 0


def test_bounds_custom_mix(capsys):
    code, out, _ = run(capsys, "bounds", "ghz:3", "--mix", "mmp*2,pmm")
    assert code == 0 and json.loads(out)["quasi_pure"] > 0


def test_schmidt(capsys):
    code, out, _ = run(capsys, "schmidt", "maxent:3")
    assert code == 0
    header, data = read_csv(out)
    assert header == ["index", "coefficient"]
    assert np.allclose(data[:, 1], 1 / 3)
    assert out.startswith("# entk ")


def test_dynamics_matches_closed_form(capsys):
    code, out, _ = run(capsys, "dynamics", "--state", "bell:phi+", "--channel", "zero:0.5", "--tmax", "4", "--points", "21")
    assert code == 0
    header, data = read_csv(out)
    ch = ZeroTemperature(0.5)
    for t, v in data[:, :2]:
        assert v == pytest.approx(bell_decay_closed_form("phi+", ch, t).value, abs=1e-9)


def test_dynamics_then_fit(tmp_path, capsys):
    csv = tmp_path / "traj.csv"
    assert run(capsys, "dynamics", "--state", "bell:psi+", "--channel", "dephasing:0.5", "--tmax", "10", "--points", "101", "-o", str(csv))[0] == 0
    code, out, _ = run(capsys, "fit", str(csv))
    assert code == 0 and json.loads(out)["gamma"] == pytest.approx(0.5, rel=1e-4)
    code, out, _ = run(capsys, "fit", str(csv), "--window", "1,6")
    assert code == 0 and json.loads(out)["window"] == [1.0, 6.0]


def test_ppt_scan(capsys):
    code, out, _ = run(capsys, "ppt-scan", "hor33", "--from", "0.2", "--to", "0.8", "--points", "3", "--restarts", "1", "--max-iters", "50")
    assert code == 0
    header, data = read_csv(out)
    assert header[:3] == ["a", "min_pt_eigenvalue", "best_algebraic"]
    assert data.shape == (3, 5) and np.all(data[:, 2] > 0) and np.all(data[:, 1] > -1e-12)


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dims": [2, 2],\n "matrix": [[1, 2]')
    code, _, err = run(capsys, "bounds", str(bad))
    assert code == EXIT_PARSE and "line 2" in err
    assert run(capsys, "bounds", "nosuchstate")[0] == EXIT_PARSE
    assert run(capsys, "bogus")[0] == EXIT_PARSE
    notrace = tmp_path / "t.json"
    notrace.write_text(json.dumps({"dims": [2], "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.2, 0]]]}))
    assert run(capsys, "bounds", str(notrace))[0] == EXIT_VALIDATION
    assert run(capsys, "gen", "hor33:a=2")[0] == EXIT_VALIDATION
    prod = tmp_path / "p.json"
    prod.write_text(json.dumps({"dims": [2, 2], "matrix": [[[1 if i == j == 0 else 0, 0] for j in range(4)] for i in range(4)]}))
    # a product dominant eigenvector leaves the quasi-pure estimate undefined, not an error
    assert run(capsys, "bounds", str(prod))[0] == 0
    assert run(capsys, "dynamics", "--state", "ghz:3", "--channel", "zero:1", "--max-dim", "4")[0] == EXIT_VALIDATION


def test_fit_input_errors(tmp_path, capsys):
    csv = tmp_path / "flat.csv"
    csv.write_text("t,value\n" + "".join(f"{i},nan\n" for i in range(20)))
    assert run(capsys, "fit", str(csv))[0] == EXIT_VALIDATION
    csv.write_text("t,value\n0,1\n1,oops\n")
    code, _, err = run(capsys, "fit", str(csv))
    assert code == EXIT_PARSE and "line 3" in err


def test_env_overrides(monkeypatch, capsys):
    monkeypatch.setenv("ENTK_SEED", "17")
    out = run(capsys, "schmidt", "bell:psi-")[1]
    assert "# seed: 17" in out
    out = run(capsys, "schmidt", "bell:psi-", "--seed", "3")[1]
    assert "# seed: 3" in out
    monkeypatch.setenv("ENTK_SEED", "x")
    assert run(capsys, "schmidt", "bell:psi-")[0] == EXIT_PARSE


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "entk.cli", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("entk ")


def test_numerical_exit_code(tmp_path, capsys, monkeypatch):
    import entk.cli
    from entk.errors import FitDiverged

    def boom(*_a, **_k):
        raise FitDiverged("no convergence")

    monkeypatch.setattr(entk.cli, "fit_exponential", boom)
    csv = tmp_path / "c.csv"
    csv.write_text("t,value\n" + "".join(f"{i},{math.exp(-i)}\n" for i in range(20)))
    assert run(capsys, "fit", str(csv))[0] == EXIT_NUMERICAL
