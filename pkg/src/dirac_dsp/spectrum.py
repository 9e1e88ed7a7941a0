"""Eigenvalue search: coarse scan of the scaled T11, dip subdivision, refinement.

T11 is real inside a bound window, so eigenvalues are sign changes of the
bounded quantity returned by :func:`dirac_dsp.kernel.scaled_t11`.  Doublets
split by far less than the grid spacing show up as a dip of ``|T11|``
without a sign change; those are subdivided until the two crossings appear.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Literal, Sequence

import numpy as np
from scipy.optimize import brentq

from . import kernel
from .dirac import singular_energies
from .errors import (
    AmbiguousParity,
    ConvergenceFailure,
    DiracDSPError,
    NoBoundStates,
)
from .model import (
    EnergyWindow,
    PhysicalConstants,
    PotentialSpec,
    WindowInterval,
    bound_window,
    schrodinger_window,
)
from .schrodinger import schrodinger_singular_energies

Model = Literal["dirac", "schrodinger"]
BranchSelect = Literal["particle", "antiparticle", "all"]


@dataclass(frozen=True)
class ScanSettings:
    coarse_points: int = 20001
    refine_tol_energy: float = 1e-4
    tol_residual: float = 1e-8
    doublet_split_min: float = 1e-3
    dip_threshold: float = 1.0
    max_depth: int = 12
    subdivisions: int = 16
    window_margin: float = 1e-6
    hole_fraction: float = 1e-9
    workers: int = 1

    def __post_init__(self) -> None:
        if self.coarse_points < 1000:
            raise ValueError("coarse_points must be at least 1000")
        if not self.refine_tol_energy > 0:
            raise ValueError("refine_tol_energy must be positive")
        if not self.tol_residual > 0:
            raise ValueError("tol_residual must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class BoundState:
    E: float
    n: int
    parity_plus: str
    residual: float
    branch: str = "particle"
    model: str = "dirac"


def _kernel_model(model: Model) -> int:
    if model == "dirac":
        return kernel.DIRAC
    if model == "schrodinger":
        return kernel.SCHRODINGER
    raise ValueError(f"unknown model {model!r}")


def window_for(spec: PotentialSpec, constants: PhysicalConstants, model: Model = "dirac") -> EnergyWindow:
    return bound_window(spec, constants) if model == "dirac" else schrodinger_window(spec)


def residual_function(
    spec: PotentialSpec, constants: PhysicalConstants, model: Model = "dirac"
) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorised scaled T11 for a fixed potential."""
    kmodel = _kernel_model(model)
    args = (kmodel, spec.Va, spec.Vb, spec.Sa, spec.Sb, spec.a, spec.b,
            constants.m, constants.hbar, constants.c)

    def f(E):
        return kernel.scaled_t11(np.asarray(E, dtype=float), *args)

    return f


def _scalar(f: Callable[[np.ndarray], np.ndarray]) -> Callable[[float], float]:
    def g(E: float) -> float:
        return float(f(np.array([E]))[0])

    return g


def _evaluate(f, grid: np.ndarray, workers: int) -> np.ndarray:
    if workers == 1 or grid.size < 4 * workers:
        return f(grid)
    chunks = np.array_split(grid, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(f, chunks))
    return np.concatenate(parts)


def _coarse_grid(interval: WindowInterval, holes: Sequence[float], settings: ScanSettings) -> np.ndarray:
    width = interval.width
    margin = settings.window_margin * width
    lo, hi = interval.lower + margin, interval.upper - margin
    grid = [np.linspace(lo, hi, settings.coarse_points)]
    # near a floor (window edge or k = 0 energy) levels are evenly spaced in k, not E,
    # so deep wells need points packed quadratically towards each floor
    u2 = np.linspace(0.0, 1.0, settings.coarse_points // 4) ** 2
    anchors = [lo, hi] + [e for e in holes if lo < e < hi]
    for e in anchors:
        if e > lo:
            grid.append(e - (e - lo) * u2)
        if e < hi:
            grid.append(e + (hi - e) * u2)
    grid = np.unique(np.concatenate(grid))
    hole = settings.hole_fraction * width
    keep = np.ones(grid.size, dtype=bool)
    for e in holes:
        if interval.lower < e < interval.upper:
            keep &= np.abs(grid - e) > hole
    return grid[keep]


def _brackets_from_grid(grid: np.ndarray, vals: np.ndarray) -> tuple[list[tuple[float, float]], list[float]]:
    brackets: list[tuple[float, float]] = []
    exact: list[float] = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            exact.append(float(grid[i]))
        elif vals[i] * vals[i + 1] < 0.0:
            brackets.append((float(grid[i]), float(grid[i + 1])))
    if len(vals) and vals[-1] == 0.0:
        exact.append(float(grid[-1]))
    return brackets, exact


def _dip_candidates(vals: np.ndarray, threshold: float, half_window: int = 16) -> list[int]:
    mags = np.abs(vals)
    out = []
    for i in range(1, len(vals) - 1):
        if not (mags[i] <= mags[i - 1] and mags[i] <= mags[i + 1]):
            continue
        if not (vals[i - 1] * vals[i] > 0 and vals[i] * vals[i + 1] > 0):
            continue
        lo, hi = max(0, i - half_window), min(len(vals), i + half_window + 1)
        if mags[i] < threshold * float(np.median(mags[lo:hi])):
            out.append(i)
    return out


def resolve_dip(f, lo: float, hi: float, settings: ScanSettings, depth: int = 0) -> list[tuple[float, float]]:
    """Subdivide ``[lo, hi]`` around the minimum of |f| until sign changes appear."""
    grid = np.linspace(lo, hi, settings.subdivisions + 1)
    vals = f(grid)
    good = np.isfinite(vals)
    grid, vals = grid[good], vals[good]
    if grid.size < 3:
        return []
    brackets, exact = _brackets_from_grid(grid, vals)
    brackets += [(e, e) for e in exact]
    if brackets:
        return brackets
    j = int(np.argmin(np.abs(vals)))
    if j == 0 or j == grid.size - 1:
        return []
    if depth + 1 >= settings.max_depth or (grid[j + 1] - grid[j - 1]) < settings.doublet_split_min:
        return []
    return resolve_dip(f, float(grid[j - 1]), float(grid[j + 1]), settings, depth + 1)


def _refine(fs: Callable[[float], float], lo: float, hi: float, settings: ScanSettings) -> float:
    if lo == hi:
        return lo
    flo, fhi = fs(lo), fs(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if not (flo * fhi < 0):
        raise ConvergenceFailure(f"no sign change across [{lo}, {hi}]")

    def guarded(E: float) -> float:
        v = fs(E)
        if math.isnan(v):
            # an exact singular point; the scaled T11 is continuous through it
            v = 0.5 * (fs(E * (1 + 1e-13)) + fs(E * (1 - 1e-13)))
        return v

    xtol = min(settings.refine_tol_energy * 1e-4, 1e-6)
    try:
        root, info = brentq(guarded, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps,
                            maxiter=200, full_output=True, disp=False)
    except (ValueError, RuntimeError) as exc:  # pragma: no cover - brentq contract
        raise ConvergenceFailure(str(exc)) from exc
    if not info.converged:
        raise ConvergenceFailure(f"refinement stalled in [{lo}, {hi}]")
    return float(root)


def find_roots(
    f: Callable[[np.ndarray], np.ndarray],
    interval: WindowInterval,
    holes: Sequence[float],
    settings: ScanSettings,
) -> list[float]:
    """All zeros of ``f`` inside one window interval, sorted."""
    grid = _coarse_grid(interval, holes, settings)
    vals = _evaluate(f, grid, settings.workers)
    good = np.isfinite(vals)
    grid, vals = grid[good], vals[good]
    brackets, exact = _brackets_from_grid(grid, vals)
    for i in _dip_candidates(vals, settings.dip_threshold):
        brackets.extend(resolve_dip(f, float(grid[i - 1]), float(grid[i + 1]), settings))
    fs = _scalar(f)
    roots = list(exact)
    for lo, hi in brackets:
        E = _refine(fs, lo, hi, settings)
        r = abs(fs(E))
        if not r <= settings.tol_residual:
            raise ConvergenceFailure(f"residual {r:.3e} above tolerance at E={E}")
        roots.append(E)
    roots.sort()
    # a root landing exactly on a grid point can be reported by two brackets
    deduped: list[float] = []
    for E in roots:
        if deduped and abs(E - deduped[-1]) <= settings.refine_tol_energy * 1e-3:
            continue
        deduped.append(E)
    return deduped


def holes_for(spec: PotentialSpec, constants: PhysicalConstants, model: Model) -> tuple[float, ...]:
    if model == "dirac":
        return singular_energies(spec, constants)
    return schrodinger_singular_energies(spec)


def refine_root(
    bracket: tuple[float, float],
    spec: PotentialSpec,
    constants: PhysicalConstants,
    settings: ScanSettings | None = None,
    model: Model = "dirac",
) -> float:
    """Refine one eigenvalue from a sign-change or dip bracket."""
    settings = settings or ScanSettings()
    f = residual_function(spec, constants, model)
    fs = _scalar(f)
    lo, hi = bracket
    if fs(lo) * fs(hi) < 0:
        E = _refine(fs, lo, hi, settings)
    else:
        sub = resolve_dip(f, lo, hi, settings)
        if not sub:
            raise ConvergenceFailure(f"no sign change or dip inside [{lo}, {hi}]")
        E = _refine(fs, *sub[0], settings)
    if not abs(fs(E)) <= settings.tol_residual:
        raise ConvergenceFailure(f"residual above tolerance at E={E}")
    return E


def eigenvalues(
    spec: PotentialSpec,
    constants: PhysicalConstants,
    settings: ScanSettings | None = None,
    model: Model = "dirac",
    branch: BranchSelect = "particle",
) -> dict[str, list[float]]:
    """Raw sorted eigenvalues per branch, without parity labelling."""
    settings = settings or ScanSettings()
    window = window_for(spec, constants, model)
    f = residual_function(spec, constants, model)
    holes = holes_for(spec, constants, model)
    out: dict[str, list[float]] = {}
    for interval in window.intervals:
        if branch != "all" and interval.branch != branch:
            continue
        out.setdefault(interval.branch, []).extend(find_roots(f, interval, holes, settings))
    for name, roots in out.items():
        roots.sort(key=abs)
    return out


def scan_spectrum(
    spec: PotentialSpec,
    constants: PhysicalConstants,
    settings: ScanSettings | None = None,
    model: Model = "dirac",
    branch: BranchSelect = "particle",
    with_parity: bool = True,
) -> list[BoundState]:
    """Every bound state in the selected branch(es), indexed from 1 per branch.

    Antiparticle states are indexed by increasing ``|E|`` so that state n
    mirrors particle state n for a pure scalar well.
    """
    from .states import classify_parity, normalized_state

    settings = settings or ScanSettings()
    window = window_for(spec, constants, model)
    if window.empty:
        raise NoBoundStates("bound window is empty")
    roots = eigenvalues(spec, constants, settings, model, branch)
    f = _scalar(residual_function(spec, constants, model))
    states: list[BoundState] = []
    for br in ("particle", "antiparticle"):
        for n, E in enumerate(roots.get(br, []), start=1):
            parity = "n/a"
            if with_parity:
                try:
                    parity = classify_parity(normalized_state(E, spec, constants, model))
                except AmbiguousParity:
                    parity = "ambiguous"
            states.append(BoundState(E=E, n=n, parity_plus=parity, residual=abs(f(E)),
                                     branch=br, model=model))
    if not states:
        raise NoBoundStates("no zero of T11 inside the bound window")
    return states


@dataclass
class SweepRow:
    value: float
    states: list[BoundState] = field(default_factory=list)
    error: str = ""


def sweep(
    spec_template: PotentialSpec,
    swept_field: str,
    values: Sequence[float],
    constants: PhysicalConstants,
    settings: ScanSettings | None = None,
    model: Model = "dirac",
    branch: BranchSelect = "particle",
    with_parity: bool = True,
) -> list[SweepRow]:
    """One spectrum per swept value; failures are recorded, not raised."""
    rows = []
    for value in values:
        try:
            spec = spec_template.with_field(swept_field, float(value))
            states = scan_spectrum(spec, constants, settings, model, branch, with_parity)
            rows.append(SweepRow(float(value), states))
        except NoBoundStates as exc:
            rows.append(SweepRow(float(value), [], f"NoBoundStates: {exc}"))
        except (DiracDSPError, ValueError) as exc:
            rows.append(SweepRow(float(value), [], f"{type(exc).__name__}: {exc}"))
    return rows
