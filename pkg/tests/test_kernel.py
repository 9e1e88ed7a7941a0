from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from dirac_dsp import _kernel_py, kernel
from dirac_dsp.model import PhysicalConstants, PotentialSpec
from dirac_dsp.spectrum import residual_function, scan_spectrum

C = PhysicalConstants(c=137.0)
ARGS = dict(Va=10000.0, Vb=50000.0, Sa=5000.0, Sb=20000.0, a=0.01, b=0.02)

needs_ext = pytest.mark.skipif("cython" not in kernel.available_backends(), reason="extension not built")


def _call(impl, E, model=kernel.DIRAC, **kw):
    p = dict(ARGS, **kw)
    return impl(np.asarray(E, dtype=float), model, p["Va"], p["Vb"], p["Sa"], p["Sb"], p["a"], p["b"],
                1.0, 1.0, 137.0)


def test_backend_name():
    assert kernel.BACKEND in ("python", "cython")


@needs_ext
@pytest.mark.parametrize("model", [kernel.DIRAC, kernel.SCHRODINGER])
def test_backends_agree(model):
    E = np.linspace(18770.0, 88000.0, 4001) if model == kernel.DIRAC else np.linspace(1.0, 49999.0, 4001)
    py = _call(_kernel_py.scaled_t11, E, model)
    cy = _call(kernel.available_backends()["cython"], E, model)
    assert np.array_equal(np.isnan(py), np.isnan(cy))
    ok = np.isfinite(py)
    assert np.max(np.abs(py[ok] - cy[ok])) <= 1e-10


@needs_ext
def test_backends_agree_deep_wall():
    E = np.linspace(19000.0, 60000.0, 2001)
    kw = dict(Va=0.0, Vb=0.0, Sa=0.0, Sb=1e7, a=0.0)
    py = _call(_kernel_py.scaled_t11, E, **kw)
    cy = _call(kernel.available_backends()["cython"], E, **kw)
    assert np.all(np.isfinite(py))
    assert np.max(np.abs(py - cy)) <= 1e-10


@pytest.mark.parametrize("impl", list(kernel.available_backends().values()))
def test_bounded_and_shape(impl):
    E = np.linspace(18770.0, 88000.0, 301).reshape(7, 43)
    out = _call(impl, E)
    assert out.shape == E.shape
    ok = np.isfinite(out)
    assert np.all(np.abs(out[ok]) <= 1 + 1e-12)


@pytest.mark.parametrize("impl", list(kernel.available_backends().values()))
def test_singular_energy_is_nan(impl):
    hole = ARGS["Va"] + ARGS["Sa"] + 137.0**2  # k = 0 in region III
    assert np.isnan(_call(impl, [hole])[0])


@pytest.mark.parametrize("name", list(kernel.available_backends()))
def test_use_backend_scan_matches(name):
    spec = PotentialSpec.scalar(10000, 50000)
    base = [s.E for s in scan_spectrum(spec, C, with_parity=False)]
    with kernel.use_backend(name):
        assert kernel.BACKEND == name
        got = [s.E for s in scan_spectrum(spec, C, with_parity=False)]
    assert np.allclose(got, base, rtol=1e-12, atol=0)


def test_use_backend_rejects_unknown():
    with pytest.raises(ValueError):
        with kernel.use_backend("fortran"):
            pass


def test_env_var_forces_python():
    env = dict(os.environ, DIRAC_DSP_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", "import dirac_dsp.kernel as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_residual_function_vectorised():
    f = residual_function(PotentialSpec.vector(0, 50000), C)
    E = np.linspace(32000, 68000, 50)
    assert np.allclose(f(E), [f(np.array([e]))[0] for e in E], rtol=0, atol=1e-14)
