from __future__ import annotations

import csv
import io
import subprocess
import sys

import numpy as np
import pytest
from scipy.integrate import trapezoid

from dirac_dsp.cli import main, parse_sweep
from dirac_dsp.config import ConfigError, load_config, parse_config


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_window(capsys):
    code, out, _ = run(capsys, "window", "--Vb", "50000")
    assert code == 0
    assert out.strip() == "case A: (31231, 68769) particle"


def test_window_empty(capsys):
    code, out, _ = run(capsys, "window")
    assert code == 2 and "no bound states" in out


def test_spectrum_csv(capsys):
    code, out, err = run(capsys, "spectrum", "--Vb", "50000")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["sweep_value", "n", "E", "parity_plus", "residual", "branch"]
    assert [r["parity_plus"] for r in rows] == ["even", "odd", "even", "odd", "even"]
    assert float(rows[0]["E"]) == pytest.approx(36084.685, abs=1e-3)
    assert "5 bound states" in err


def test_spectrum_sweep(capsys):
    code, out, _ = run(capsys, "spectrum", "--Vb", "50000", "--sweep", "Va=0:20000:10000")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert sorted({float(r["sweep_value"]) for r in rows}) == [0.0, 10000.0, 20000.0]


def test_spectrum_antiparticles(capsys):
    code, out, _ = run(capsys, "spectrum", "--Sb", "50000", "--branch", "all")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert {r["branch"] for r in rows} == {"particle", "antiparticle"}


def test_spectrum_no_states(capsys):
    assert run(capsys, "spectrum")[0] == 2


def test_schrodinger_rejects_scalar_sweep(capsys):
    assert run(capsys, "spectrum", "--model", "schrodinger", "--Vb", "50000", "--sweep", "Sa=0:1:1")[0] == 1


def test_workers_byte_identical(tmp_path, capsys):
    paths = []
    for w in ("1", "3"):
        p = tmp_path / f"w{w}.csv"
        assert run(capsys, "spectrum", "--Sb", "50000", "--sweep", "Sa=0:20000:5000", "--workers", w,
                   "-o", str(p))[0] == 0
        paths.append(p)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_wavefunction_normalised(tmp_path, capsys):
    p = tmp_path / "psi.csv"
    assert run(capsys, "wavefunction", "--Vb", "50000", "--Va", "10000", "--n", "2", "--samples", "20001",
               "-o", str(p))[0] == 0
    data = np.loadtxt(p, delimiter=",", skiprows=1)
    assert data.shape == (20001, 6)
    assert trapezoid(data[:, 5], data[:, 0]) == pytest.approx(1.0, abs=1e-4)


def test_wavefunction_missing_state(capsys):
    code, _, err = run(capsys, "wavefunction", "--Vb", "50000", "--n", "9")
    assert code == 2 and "only 5" in err


def test_evolve(tmp_path, capsys):
    p = tmp_path / "rho.csv"
    code, out, _ = run(capsys, "evolve", "--Vb", "50000", "--Va", "10000", "--frames", "4", "--samples", "64",
                       "-o", str(p))
    assert code == 0 and "period = 7.856" in out
    data = np.loadtxt(p, delimiter=",", skiprows=1)
    assert data.shape == (5 * 64, 3)


def test_verify_passes_and_negative_control(capsys):
    code, out, _ = run(capsys, "verify", "--Vb", "50000", "--max-states", "2")
    assert code == 0 and "[FAIL]" not in out
    code, out, _ = run(capsys, "verify", "--Vb", "50000", "--max-states", "2", "--inject-offset", "1.0")
    assert code == 4 and "[FAIL]" in out


def test_verify_schrodinger(capsys):
    code, out, _ = run(capsys, "verify", "--model", "schrodinger", "--Vb", "50000", "--max-states", "3")
    assert code == 0 and "fd oracle" in out


@pytest.mark.parametrize("argv", [
    ["spectrum", "--Vb", "50000", "--sweep", "Va=0:10:0"],
    ["spectrum", "--Vb", "50000", "--sweep", "c=0:10:1"],
    ["spectrum", "--Vb", "50000", "--sweep", "Va0:10"],
    ["window", "--Va", "60000", "--Vb", "50000"],
    ["window", "--coarse-points", "10"],
    ["window", "--config", "/nonexistent/run.conf"],
    ["window", "--model", "klein"],
    ["nosuchcommand"],
])
def test_config_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_config_file(tmp_path, capsys):
    p = tmp_path / "run.conf"
    p.write_text("# VDSP\nVb = 50000\nVa = 10000  # barrier\n")
    code, out, _ = run(capsys, "window", "--config", str(p))
    assert code == 0 and "(31231, 68769)" in out
    assert load_config(p).Va == 10000.0


@pytest.mark.parametrize("text", ["Vb 5", "= 3", "colour = red", "Vb = tall"])
def test_parse_config_errors(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_parse_sweep_includes_stop():
    assert parse_sweep("Va=0:40000:5000")[1][-1] == 40000.0
    assert len(parse_sweep("both_equal=0:1:0.25")[1]) == 5


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "dirac_dsp.cli", "window", "--Sb", "50000"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.strip() == "case C: (18769, 68769) particle; (-68769, -18769) antiparticle"
