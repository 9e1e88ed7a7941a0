from __future__ import annotations

import math

import numpy as np
import pytest

from dirac_dsp import oracles
from dirac_dsp.errors import ConvergenceFailure, GridTooCoarse, StiffnessFailure
from dirac_dsp.model import PhysicalConstants, PotentialSpec
from dirac_dsp.oracles import dirac_shooting_oracle, fd_grid, fd_oracle, shooting_root, shooting_spectrum
from dirac_dsp.spectrum import scan_spectrum

C = PhysicalConstants(c=137.0)


def _levels(spec, model="dirac"):
    return [s.E for s in scan_spectrum(spec, C, model=model, with_parity=False)]


@pytest.mark.parametrize("spec", [
    PotentialSpec.vector(10000, 50000),
    PotentialSpec.scalar(10000, 50000),
    PotentialSpec.equal(10000, 25000),
    PotentialSpec.vector(0, 50000, a=0.0),
])
def test_shooting_agrees_with_transfer_matrix(spec):
    for E in _levels(spec)[:3]:
        assert shooting_root(E, spec, C) == pytest.approx(E, rel=1e-9)


def test_shooting_determinant_changes_sign_between_levels():
    spec = PotentialSpec.vector(10000, 50000)
    E = _levels(spec)
    for lo, hi in zip(E[:-1], E[1:]):
        assert abs(dirac_shooting_oracle(0.5 * (lo + hi), spec, C)) > 1e-6


def test_shooting_spectrum_matches():
    spec = PotentialSpec.vector(0, 50000)
    assert np.allclose(shooting_spectrum(spec, C, points=80), _levels(spec), rtol=1e-8)


def test_shooting_root_without_sign_change():
    spec = PotentialSpec.vector(0, 50000)
    E = _levels(spec)
    with pytest.raises(ConvergenceFailure):
        shooting_root(0.5 * (E[0] + E[1]), spec, C, halfwidth=1.0)


def test_stiffness_failure(monkeypatch):
    class Stalled:
        status = -1
        message = "step size too small"

    monkeypatch.setattr(oracles, "solve_ivp", lambda *a, **k: Stalled())
    with pytest.raises(StiffnessFailure):
        dirac_shooting_oracle(40000.0, PotentialSpec.vector(0, 50000), C)


def test_fd_matches_schrodinger():
    spec = PotentialSpec.vector(0, 50000)
    for f, e in zip(fd_oracle(spec, C), _levels(spec, "schrodinger")):
        assert abs(f - e) <= 1e-3 * e


def test_fd_shows_doublets():
    spec = PotentialSpec.vector(10000, 50000)
    levels = fd_oracle(spec, C, count=4)
    gaps = np.diff(levels)
    # the lowest pair sits below the barrier top and splits by tunnelling
    assert gaps[0] < 0.3 * gaps[1]
    assert np.allclose(levels, _levels(spec, "schrodinger")[:4], rtol=1e-3)


def test_fd_grid_lands_on_interfaces():
    spec = PotentialSpec.vector(10000, 50000)
    x, dx = fd_grid(spec, 5001, 0.05)
    for edge in (-0.02, -0.01, 0.01, 0.02):
        assert np.min(np.abs(x - edge)) <= 1e-12
    assert np.allclose(np.diff(x), dx)


def test_fd_free_particle_box():
    L = 0.05
    got = fd_oracle(PotentialSpec(b=0.02), C, grid_points=20001, box_half_width=L, count=3)
    want = [(n * math.pi) ** 2 / (2 * (2 * L) ** 2) for n in (1, 2, 3)]
    assert np.allclose(got, want, rtol=1e-6)


def test_fd_grid_too_coarse():
    with pytest.raises(GridTooCoarse):
        fd_oracle(PotentialSpec.vector(0, 50000), C, grid_points=200)
