"""Nonrelativistic companion solver for the same five-region well.

Only the vector heights ``Va``/``Vb`` of a :class:`PotentialSpec` enter; use
:meth:`PotentialSpec.nonrelativistic` to fold scalar heights in.  The
matching matrices are the Dirac ones with the spinor ratios replaced by the
wave numbers themselves (alpha -> k, beta -> q, gamma -> p).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .dirac import TransferMatrix, chain_product, interface_maps, sqrt_branch
from .errors import DegeneratePole
from .model import PhysicalConstants, PotentialSpec


@dataclass(frozen=True)
class SchrodingerKinematics:
    E: float
    k: complex
    p: complex
    q: complex

    def region_waves(self) -> tuple[tuple[complex, complex], ...]:
        return ((self.q, self.q), (self.k, self.k), (self.p, self.p), (self.k, self.k), (self.q, self.q))


def schrodinger_kinematics(E: float, spec: PotentialSpec, constants: PhysicalConstants) -> SchrodingerKinematics:
    two_m = 2.0 * constants.m
    h = constants.hbar
    return SchrodingerKinematics(
        E=E,
        k=sqrt_branch(two_m * E) / h,
        p=sqrt_branch(two_m * (E - spec.Va)) / h,
        q=sqrt_branch(two_m * (E - spec.Vb)) / h,
    )


def schrodinger_singular_energies(spec: PotentialSpec) -> tuple[float, ...]:
    return tuple(sorted({0.0, spec.Va, spec.Vb}))


def schrodinger_transfer_matrix(
    E: float, spec: PotentialSpec, constants: PhysicalConstants, referenced: bool = False
) -> TransferMatrix:
    kin = schrodinger_kinematics(E, spec, constants)
    if kin.k == 0 or kin.p == 0 or kin.q == 0:
        raise DegeneratePole(f"vanishing wave number at E={E!r}")
    return chain_product(interface_maps(kin.region_waves(), spec, referenced))


def schrodinger_t11(E: float, spec: PotentialSpec, constants: PhysicalConstants, scaled: bool = False) -> complex:
    """Closed-form T11 of the nonrelativistic double well; ``scaled`` divides out ``|exp(2iqb)|``."""
    kin = schrodinger_kinematics(E, spec, constants)
    k, p, q = kin.k, kin.p, kin.q
    if k == 0 or p == 0 or q == 0:
        raise DegeneratePole(f"vanishing wave number at E={E!r}")
    a, b = spec.a, spec.b
    phi_minus = k * (a - b) - p * a
    phi_plus = k * (a - b) + p * a
    brace = (
        (k + p) ** 2 * ((k + q) ** 2 * cmath.exp(2j * phi_minus) - (k - q) ** 2 * cmath.exp(-2j * phi_minus))
        + (k - p) ** 2 * ((k - q) ** 2 * cmath.exp(-2j * phi_plus) - (k + q) ** 2 * cmath.exp(2j * phi_plus))
        + 2 * (k**2 - q**2) * (k**2 - p**2) * (cmath.exp(2j * p * a) - cmath.exp(-2j * p * a))
    )
    z = 2j * q * b
    if scaled:
        z -= z.real
    return cmath.exp(z) / (16 * k**2 * q * p) * brace


def schrodinger_single_well_t11(E: float, spec: PotentialSpec, constants: PhysicalConstants) -> complex:
    """The single-well bracket reached when Va = 0 or a = 0."""
    kin = schrodinger_kinematics(E, spec, constants)
    k, q, b = kin.k, kin.q, spec.b
    return cmath.exp(2j * q * b) / (4 * k * q) * (
        (q + k) ** 2 * cmath.exp(-2j * k * b) - (q - k) ** 2 * cmath.exp(2j * k * b)
    )


def finite_well_residual(E: float, spec: PotentialSpec, constants: PhysicalConstants) -> float:
    """``2 k kappa / (k^2 - kappa^2) - tan(2kb)`` for the single finite well."""
    h, two_m = constants.hbar, 2.0 * constants.m
    k = math.sqrt(two_m * E) / h
    kappa = math.sqrt(two_m * (spec.Vb - E)) / h
    return 2 * k * kappa / (k * k - kappa * kappa) - math.tan(2 * k * spec.b)


def finite_well_levels(spec: PotentialSpec, constants: PhysicalConstants, count: int | None = None) -> list[float]:
    """Roots of the single finite well, by branch-wise bracketing in k.

    Written in the pole-free form ``sin(2kb)(k^2 - kappa^2) - 2 k kappa cos(2kb)``.
    """
    h, two_m, b = constants.hbar, 2.0 * constants.m, spec.b
    k_max = math.sqrt(two_m * spec.Vb) / h

    def f(k: float) -> float:
        kappa = math.sqrt(max(k_max * k_max - k * k, 0.0))
        return math.sin(2 * k * b) * (k * k - kappa * kappa) - 2 * k * kappa * math.cos(2 * k * b)

    # one root per half-period of 2kb: bracket on a grid fine enough for that
    n_pts = max(64, int(8 * k_max * b) + 64)
    grid = np.linspace(0.0, k_max, n_pts + 1)[1:]
    vals = [f(k) for k in grid]
    roots = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            roots.append(grid[i])
        elif vals[i] * vals[i + 1] < 0:
            roots.append(brentq(f, grid[i], grid[i + 1], xtol=1e-14, rtol=4 * np.finfo(float).eps))
    energies = [(h * k) ** 2 / two_m for k in roots]
    return energies[:count] if count is not None else energies


def infinite_well_levels(b: float, constants: PhysicalConstants, count: int) -> list[float]:
    """``n^2 pi^2 hbar^2 / (8 m b^2)`` for a hard-walled box of width 2b."""
    scale = (math.pi * constants.hbar) ** 2 / (8.0 * constants.m * b * b)
    return [n * n * scale for n in range(1, count + 1)]


def schrodinger_spectrum(spec: PotentialSpec, constants: PhysicalConstants, settings=None):
    from .spectrum import scan_spectrum

    return scan_spectrum(spec, constants, settings, model="schrodinger")
