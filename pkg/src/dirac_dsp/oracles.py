"""Independent eigenvalue oracles.

``fd_oracle`` diagonalises a three-point finite-difference Schrodinger
Hamiltonian in a hard-walled box.  ``dirac_shooting_oracle`` integrates the
coupled first-order Dirac system from both evanescent tails and returns the
matching determinant at the origin.  Neither shares code with the transfer
matrices, which is the point.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from .errors import ConvergenceFailure, GridTooCoarse, StiffnessFailure
from .model import PhysicalConstants, PotentialSpec, bound_window, potential_at
from .schrodinger import infinite_well_levels

_RTOL = 4 * np.finfo(float).eps


def default_box_half_width(spec: PotentialSpec, constants: PhysicalConstants) -> float:
    """``b + 10/|q|`` with ``q`` taken at the infinite-well ground level."""
    e_est = infinite_well_levels(spec.b, constants, 1)[0]
    depth = max(spec.Vb - e_est, 1e-3 * spec.Vb, 1e-12)
    kappa = math.sqrt(2 * constants.m * depth) / constants.hbar
    return spec.b + 10.0 / kappa


def fd_grid(spec: PotentialSpec, grid_points: int, half_width: float) -> tuple[np.ndarray, float]:
    """Interior nodes of a uniform grid on [-L, L] that lands on x = +-b (and +-a when commensurate)."""
    dx = 2.0 * half_width / (grid_points + 1)
    cells_b = max(1, round(spec.b / dx))
    dx = spec.b / cells_b
    if spec.a > 0:
        ratio = spec.a / dx
        if abs(ratio - round(ratio)) > 1e-9 * max(ratio, 1.0):
            # refine so that a lands on a node too when a/b is a simple fraction
            frac = (spec.a / spec.b)
            for den in range(1, 65):
                if abs(frac * den - round(frac * den)) < 1e-12:
                    dx = spec.b / (math.ceil(cells_b / den) * den)
                    break
    cells = round(half_width / dx)
    x = dx * np.arange(-cells + 1, cells)
    return x, dx


def _node_potential(spec: PotentialSpec, x: np.ndarray, dx: float) -> np.ndarray:
    """Vector potential at nodes; nodes sitting on an interface take the mean of both sides."""
    left = np.array([potential_at(spec, xi - 0.25 * dx) for xi in x])
    right = np.array([potential_at(spec, xi + 0.25 * dx) for xi in x])
    return 0.5 * (left + right)


def fd_oracle(
    spec: PotentialSpec,
    constants: PhysicalConstants,
    grid_points: int = 20001,
    box_half_width: float | None = None,
    count: int = 5,
    tol: float = 1e-3,
) -> list[float]:
    """Lowest ``count`` levels of ``-hbar^2/2m d^2/dx^2 + V`` with hard walls at +-L.

    Without an explicit ``box_half_width`` the box starts at ten ground-level
    decay lengths and is widened until it also holds ten decay lengths of the
    highest returned level.
    """
    if box_half_width is not None:
        return _fd_levels(spec, constants, grid_points, box_half_width, count, tol)
    L = default_box_half_width(spec, constants)
    for _ in range(8):
        levels = _fd_levels(spec, constants, grid_points, L, count, tol)
        depth = spec.Vb - levels[-1]
        if depth <= 0:
            # top level still pushed up by the walls (or genuinely unbound): widen
            L = spec.b + 2.0 * (L - spec.b)
            continue
        needed = spec.b + 10.0 * constants.hbar / math.sqrt(2 * constants.m * depth)
        if needed <= L * (1 + 1e-9):
            return levels
        L = needed
    return levels


def _fd_levels(spec, constants, grid_points, L, count, tol) -> list[float]:
    x, dx = fd_grid(spec, grid_points, L)
    kinetic = constants.hbar**2 / (2 * constants.m * dx * dx)
    diag = 2 * kinetic + _node_potential(spec, x, dx)
    off = np.full(len(x) - 1, -kinetic)
    levels = eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, count - 1))
    top = float(levels[-1])
    k_top = math.sqrt(2 * constants.m * max(top, 0.0)) / constants.hbar
    estimate = (k_top * dx) ** 2 / 12  # leading relative error of the three-point Laplacian
    if estimate > tol or spec.Vb > 1e-2 * kinetic:
        raise GridTooCoarse(f"dx={dx:.3e} gives discretisation estimate {estimate:.2e} > {tol:.1e}")
    return [float(e) for e in levels]


def _dirac_rhs(E: float, V: float, S: float, mc2: float, hc: float):
    a = (E - mc2 - V - S) / hc
    b = -(E + mc2 - V + S) / hc

    def rhs(_x, y):
        # y = (psi_+, phi) with psi_- = i phi
        return (b * y[1], a * y[0])

    return rhs


def _propagate(y, stops, spec, E, constants, rtol):
    mc2, hc = constants.rest_energy, constants.hbar_c
    for x0, x1 in zip(stops[:-1], stops[1:]):
        mid = 0.5 * (x0 + x1)
        rhs = _dirac_rhs(E, potential_at(spec, mid, "vector"), potential_at(spec, mid, "scalar"), mc2, hc)
        sol = solve_ivp(rhs, (x0, x1), y, method="RK45", rtol=rtol, atol=1e-300)
        if sol.status != 0:
            raise StiffnessFailure(f"integration stalled on [{x0}, {x1}] at E={E!r}: {sol.message}")
        y = sol.y[:, -1]
        # only the direction matters for the determinant
        y = y / math.hypot(*y)
    return y


def _tail_kappa(E: float, spec: PotentialSpec, constants: PhysicalConstants) -> tuple[float, float]:
    mc2, hc = constants.rest_energy, constants.hbar_c
    D = E + mc2 - spec.Vb + spec.Sb
    prod = D * (E - mc2 - spec.Vb - spec.Sb)
    if not prod < 0:
        raise ValueError(f"E={E!r} is not evanescent outside the well")
    return math.sqrt(-prod) / hc, D


def dirac_shooting_oracle(
    E: float,
    spec: PotentialSpec,
    constants: PhysicalConstants,
    decay_lengths: float = 10.0,
    rtol: float = 1e-10,
) -> float:
    """Matching determinant ``psi_L phi_R - phi_L psi_R`` at x=0 for unit-direction solutions."""
    hc = constants.hbar_c
    kappa, D = _tail_kappa(E, spec, constants)
    span = spec.b + decay_lengths / kappa
    cuts = sorted({spec.a, spec.b}) if spec.a > 0 else [spec.b]
    left = [-span] + [-c for c in reversed(cuts)] + [0.0]
    right = [span] + list(reversed(cuts)) + [0.0]
    y_left = np.array([1.0, -hc * kappa / D])
    y_right = np.array([1.0, hc * kappa / D])
    yl = _propagate(y_left / math.hypot(*y_left), left, spec, E, constants, rtol)
    yr = _propagate(y_right / math.hypot(*y_right), right, spec, E, constants, rtol)
    return float(yl[0] * yr[1] - yl[1] * yr[0])


def shooting_root(
    E0: float,
    spec: PotentialSpec,
    constants: PhysicalConstants,
    halfwidth: float | None = None,
    xtol: float = 1e-9,
) -> float:
    """Refine a sign change of the shooting determinant bracketing ``E0``."""
    f = lambda E: dirac_shooting_oracle(E, spec, constants)
    h = halfwidth if halfwidth is not None else 1e-5 * abs(E0)
    for _ in range(8):
        lo, hi = E0 - h, E0 + h
        flo, fhi = f(lo), f(hi)
        if flo * fhi < 0:
            return brentq(f, lo, hi, xtol=xtol * abs(E0), rtol=_RTOL)
        h *= 2
    raise ConvergenceFailure(f"no shooting sign change near E={E0!r}")


def shooting_spectrum(
    spec: PotentialSpec,
    constants: PhysicalConstants,
    points: int = 400,
    margin: float = 1e-6,
) -> list[float]:
    """Roots of the shooting determinant over the particle window on a uniform scan."""
    window = bound_window(spec, constants)
    roots: list[float] = []
    for iv in window.branch("particle"):
        pad = margin * iv.width
        grid = np.linspace(iv.lower + pad, iv.upper - pad, points)
        vals = []
        for E in grid:
            try:
                vals.append(dirac_shooting_oracle(E, spec, constants))
            except ValueError:
                vals.append(math.nan)
        for lo, hi, flo, fhi in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
            if flo * fhi < 0:
                roots.append(brentq(lambda E: dirac_shooting_oracle(E, spec, constants), lo, hi,
                                    xtol=1e-9 * abs(lo), rtol=_RTOL))
    return roots
