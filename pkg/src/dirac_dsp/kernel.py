"""Scan-kernel backend, chosen at import.

The compiled ``_kernel_ext`` is used when it was built; otherwise the numpy
implementation in ``_kernel_py``.  Set ``DIRAC_DSP_BACKEND=python`` to force
the fallback.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _kernel_py

DIRAC = _kernel_py.DIRAC
SCHRODINGER = _kernel_py.SCHRODINGER

_python_impl = _kernel_py.scaled_t11
_compiled_impl = None

if os.environ.get("DIRAC_DSP_BACKEND", "").lower() != "python":
    try:
        from ._kernel_ext import scaled_t11 as _compiled_impl
    except ImportError:
        _compiled_impl = None

if _compiled_impl is not None:
    BACKEND = "cython"
    scaled_t11 = _compiled_impl
else:
    BACKEND = "python"
    scaled_t11 = _python_impl


def available_backends() -> dict:
    out = {"python": _python_impl}
    if _compiled_impl is not None:
        out["cython"] = _compiled_impl
    return out


@contextmanager
def use_backend(name: str):
    """Temporarily route ``scaled_t11`` (and so every scan) through one backend."""
    global scaled_t11, BACKEND
    impls = available_backends()
    if name not in impls:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(impls)}")
    saved = scaled_t11, BACKEND
    scaled_t11, BACKEND = impls[name], name
    try:
        yield
    finally:
        scaled_t11, BACKEND = saved
