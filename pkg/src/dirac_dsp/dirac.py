"""Per-energy kinematics and the transfer matrix of the Dirac double well.

In every region the spinor is a pair of plane waves

    A (1, r) exp(i kappa x) + B (1, -r) exp(-i kappa x)

with wave number ``kappa`` and spinor ratio ``r``: (q, beta) outside the well,
(k, alpha) in regions II/IV and (p, gamma) under the central barrier.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.optimize import brentq

from .errors import DegenerateDenominator, SingularInterface
from .model import PhysicalConstants, PotentialSpec

Side = Literal["b_left", "a_left", "a_right", "b_right"]
SIDES: tuple[Side, ...] = ("b_left", "a_left", "a_right", "b_right")
WellKind = Literal["dirac_mixed", "dirac_vector", "dirac_scalar", "dirac_scalar_infinite"]


def sqrt_branch(z: float) -> complex:
    """Square root of a real number: real for z >= 0, +i sqrt(-z) otherwise."""
    if z >= 0.0:
        return complex(math.sqrt(z), 0.0)
    return complex(0.0, math.sqrt(-z))


def sqrt_branch_array(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    root = np.sqrt(np.abs(z))
    return np.where(z >= 0.0, root + 0j, 1j * root)


@dataclass(frozen=True)
class KinematicFactors:
    E: float
    k: complex
    p: complex
    q: complex
    alpha: complex
    beta: complex
    gamma: complex

    def region_waves(self) -> tuple[tuple[complex, complex], ...]:
        """(wave number, spinor ratio) for regions I..V."""
        return (
            (self.q, self.beta),
            (self.k, self.alpha),
            (self.p, self.gamma),
            (self.k, self.alpha),
            (self.q, self.beta),
        )


def kinematics(E: float, spec: PotentialSpec, constants: PhysicalConstants) -> KinematicFactors:
    mc2 = constants.rest_energy
    hc = constants.hbar_c
    d_alpha = E + mc2
    d_beta = E + mc2 - spec.Vb + spec.Sb
    d_gamma = E + mc2 - spec.Va + spec.Sa
    if d_alpha == 0.0 or d_beta == 0.0 or d_gamma == 0.0:
        raise DegenerateDenominator(f"spinor ratio undefined at E={E!r}")
    k = sqrt_branch(E * E - mc2 * mc2) / hc
    p = sqrt_branch(d_gamma * (E - mc2 - spec.Va - spec.Sa)) / hc
    q = sqrt_branch(d_beta * (E - mc2 - spec.Vb - spec.Sb)) / hc
    return KinematicFactors(
        E=E, k=k, p=p, q=q,
        alpha=hc * k / d_alpha,
        beta=hc * q / d_beta,
        gamma=hc * p / d_gamma,
    )


def singular_energies(spec: PotentialSpec, constants: PhysicalConstants) -> tuple[float, ...]:
    """Energies where a wave number or denominator vanishes."""
    mc2 = constants.rest_energy
    return tuple(sorted({
        -mc2, mc2,
        spec.Vb - spec.Sb - mc2, spec.Vb + spec.Sb + mc2,
        spec.Va - spec.Sa - mc2, spec.Va + spec.Sa + mc2,
    }))


def _wave_matrix(kappa: complex, ratio: complex, x: float) -> np.ndarray:
    e1 = cmath.exp(1j * kappa * x)
    e2 = cmath.exp(-1j * kappa * x)
    return np.array([[e1, e2], [ratio * e1, -ratio * e2]], dtype=complex)


def _interface_media(side: Side, kin_waves, spec: PotentialSpec):
    (q, beta), (k, alpha), (p, gamma) = kin_waves[0], kin_waves[1], kin_waves[2]
    if side == "b_left":
        return (q, beta), (k, alpha), -spec.b
    if side == "a_left":
        return (k, alpha), (p, gamma), -spec.a
    if side == "a_right":
        return (p, gamma), (k, alpha), spec.a
    if side == "b_right":
        # the right-hand medium at x = b is region V, so its phase uses q
        return (k, alpha), (q, beta), spec.b
    raise ValueError(f"unknown interface {side!r}")


def region_origins(spec: PotentialSpec, referenced: bool = True) -> tuple[float, ...]:
    """Phase origin of each region's plane waves.

    Referenced amplitudes measure regions I and V from their own boundary
    (x = -b and x = b), which keeps every matching matrix of order one even
    when ``|q| b`` is in the hundreds.
    """
    if referenced:
        return (-spec.b, 0.0, 0.0, 0.0, spec.b)
    return (0.0,) * 5


def interface_matrix(side: Side, kin: KinematicFactors, spec: PotentialSpec) -> tuple[np.ndarray, np.ndarray]:
    """Left- and right-hand matrices of the matching equation at ``side``."""
    (k1, r1), (k2, r2), x = _interface_media(side, kin.region_waves(), spec)
    return _wave_matrix(k1, r1, x), _wave_matrix(k2, r2, x)


def interface_map(
    kappa1: complex, r1: complex, kappa2: complex, r2: complex, x: float,
    origin1: float = 0.0, origin2: float = 0.0,
) -> tuple[np.ndarray, float]:
    """Closed-form ``left^-1 @ right`` with its exponent factored out.

    Returns ``(M, s)`` with the true map equal to ``exp(s) * M``.  The
    origins are the points each medium's phases are measured from.
    """
    if r1 == 0:
        raise SingularInterface(f"left matching matrix singular at x={x}")
    rho = r2 / r1
    u1 = kappa1 * (x - origin1)
    u2 = kappa2 * (x - origin2)
    phases = np.array([
        [1j * (u2 - u1), -1j * (u1 + u2)],
        [1j * (u1 + u2), 1j * (u1 - u2)],
    ])
    shift = float(np.max(phases.real))
    amp = np.array([[1 + rho, 1 - rho], [1 - rho, 1 + rho]]) * 0.5
    return amp * np.exp(phases - shift), shift


@dataclass(frozen=True)
class TransferMatrix:
    """``exp(log_scale) * entries``; ``entries`` has max-modulus one."""

    entries: np.ndarray
    log_scale: float = 0.0

    @property
    def value(self) -> np.ndarray:
        return self.entries * math.exp(self.log_scale)

    @property
    def T11(self) -> complex:
        return complex(self.entries[0, 0] * math.exp(self.log_scale))

    @property
    def T12(self) -> complex:
        return complex(self.entries[0, 1] * math.exp(self.log_scale))

    @property
    def T21(self) -> complex:
        return complex(self.entries[1, 0] * math.exp(self.log_scale))

    @property
    def T22(self) -> complex:
        return complex(self.entries[1, 1] * math.exp(self.log_scale))

    @property
    def det(self) -> complex:
        e = self.entries
        return complex((e[0, 0] * e[1, 1] - e[0, 1] * e[1, 0]) * math.exp(2 * self.log_scale))

    def __matmul__(self, other: TransferMatrix) -> TransferMatrix:
        return _rescaled(self.entries @ other.entries, self.log_scale + other.log_scale)


def _rescaled(entries: np.ndarray, log_scale: float) -> TransferMatrix:
    peak = float(np.max(np.abs(entries)))
    if peak == 0.0 or not math.isfinite(peak):
        return TransferMatrix(entries, log_scale)
    return TransferMatrix(entries / peak, log_scale + math.log(peak))


def interface_maps(waves, spec: PotentialSpec, referenced: bool = False) -> list[TransferMatrix]:
    """M12, M23, M34, M45 for per-region (wave number, ratio) pairs."""
    origins = region_origins(spec, referenced)
    maps = []
    for j, side in enumerate(SIDES):
        (k1, r1), (k2, r2), x = _interface_media(side, waves, spec)
        m, s = interface_map(k1, r1, k2, r2, x, origins[j], origins[j + 1])
        maps.append(_rescaled(m, s))
    return maps


def chain_product(maps: list[TransferMatrix]) -> TransferMatrix:
    out = maps[0]
    for m in maps[1:]:
        out = out @ m
    return out


def transfer_matrix(
    E: float, spec: PotentialSpec, constants: PhysicalConstants, referenced: bool = False
) -> TransferMatrix:
    """T = M12 M23 M34 M45; ``referenced`` measures regions I and V from x = -b and x = b."""
    waves = kinematics(E, spec, constants).region_waves()
    return chain_product(interface_maps(waves, spec, referenced))


def growing_fraction(T: TransferMatrix, q: complex, b: float, referenced: bool = False) -> complex:
    """Growing region-I amplitude at x=-b over the norm of both amplitudes there.

    With ``B5 = 0`` region I carries ``A1 = T11`` (growing towards -inf) and
    ``B1 = T21``; the ratio is bounded by one and vanishes at eigenvalues.
    """
    if referenced:
        u, w = T.entries[0, 0], T.entries[1, 0]
    else:
        damp = abs(q.imag) * b
        u = T.entries[0, 0] * cmath.exp(-1j * q * b - damp)
        w = T.entries[1, 0] * cmath.exp(1j * q * b - damp)
    return u / math.hypot(abs(u), abs(w))


def scaled_t11(E: float, spec: PotentialSpec, constants: PhysicalConstants) -> float:
    """Real, phase-removed T11 scaled into [-1, 1]."""
    T = transfer_matrix(E, spec, constants, referenced=True)
    return growing_fraction(T, 0j, spec.b, referenced=True).real


def t11_prefactor(kin: KinematicFactors, spec: PotentialSpec, scaled: bool = False) -> complex:
    z = 2j * kin.q * spec.b
    if scaled:
        z -= z.real
    return cmath.exp(z) / (16 * kin.alpha**2 * kin.beta * kin.gamma)


def t11_closed_form(E: float, spec: PotentialSpec, constants: PhysicalConstants, scaled: bool = False) -> complex:
    """Three-term closed form of T11 written out term by term.

    ``scaled`` divides out ``|exp(2iqb)|``, which overflows for deep walls.
    """
    kin = kinematics(E, spec, constants)
    al, be, ga = kin.alpha, kin.beta, kin.gamma
    if al == 0 or be == 0 or ga == 0:
        raise DegenerateDenominator(f"alpha*beta*gamma vanishes at E={E!r}")
    return t11_prefactor(kin, spec, scaled) * _t11_brace(kin.k, kin.p, al, be, ga, spec.a, spec.b)


def _t11_brace(k, p, al, be, ga, a, b) -> complex:
    phi_minus = k * (a - b) - p * a
    phi_plus = k * (a - b) + p * a
    return (
        (al + ga) ** 2 * ((al + be) ** 2 * cmath.exp(2j * phi_minus) - (al - be) ** 2 * cmath.exp(-2j * phi_minus))
        + (al - ga) ** 2 * ((al - be) ** 2 * cmath.exp(-2j * phi_plus) - (al + be) ** 2 * cmath.exp(2j * phi_plus))
        + 2 * (al**2 - be**2) * (al**2 - ga**2) * (cmath.exp(2j * p * a) - cmath.exp(-2j * p * a))
    )


def single_well_t11(E: float, spec: PotentialSpec, constants: PhysicalConstants) -> complex:
    """T11 of the single well (central barrier removed)."""
    kin = kinematics(E, spec, constants)
    al, be, k, b = kin.alpha, kin.beta, kin.k, spec.b
    return cmath.exp(2j * kin.q * b) / (4 * al * be) * (
        (al + be) ** 2 * cmath.exp(-2j * k * b) - (al - be) ** 2 * cmath.exp(2j * k * b)
    )


def _kappa(E: float, mc2: float, Vb: float, Sb: float) -> float:
    num = mc2 + Vb + Sb - E
    den = mc2 - Vb + Sb + E
    if den == 0 or num / den < 0:
        raise ValueError(f"E={E!r} outside the single-well binding range")
    return math.sqrt(num / den)


def _well_heights(kind: WellKind, spec: PotentialSpec) -> tuple[float, float]:
    if kind == "dirac_mixed":
        return spec.Vb, spec.Sb
    if kind == "dirac_vector":
        return spec.Vb, 0.0
    if kind == "dirac_scalar":
        return 0.0, spec.Sb
    raise ValueError(f"unknown well kind {kind!r}")


def single_well_residual(E: float, kind: WellKind, spec: PotentialSpec, constants: PhysicalConstants) -> float:
    """``tan(2kb)(alpha^2 - kappa^2) - 2 alpha kappa``, zero at eigenvalues.

    ``dirac_scalar_infinite`` returns ``tan(2kb) + hbar k / (m c)`` instead.
    """
    mc2 = constants.rest_energy
    k = math.sqrt(max(E * E - mc2 * mc2, 0.0)) / constants.hbar_c
    t = math.tan(2 * k * spec.b)
    if kind == "dirac_scalar_infinite":
        return t + constants.hbar * k / (constants.m * constants.c)
    Vb, Sb = _well_heights(kind, spec)
    kappa = _kappa(E, mc2, Vb, Sb)
    alpha = constants.hbar_c * k / (E + mc2)
    return t * (alpha**2 - kappa**2) - 2 * alpha * kappa


def _single_well_smooth(E: float, kind: WellKind, spec: PotentialSpec, constants: PhysicalConstants) -> float:
    # residual times cos(2kb): same zeros, no tangent poles
    mc2 = constants.rest_energy
    k = math.sqrt(max(E * E - mc2 * mc2, 0.0)) / constants.hbar_c
    s, c = math.sin(2 * k * spec.b), math.cos(2 * k * spec.b)
    Vb, Sb = _well_heights(kind, spec)
    kappa = _kappa(E, mc2, Vb, Sb)
    alpha = constants.hbar_c * k / (E + mc2)
    return s * (alpha**2 - kappa**2) - 2 * alpha * kappa * c


def single_well_roots(
    kind: WellKind,
    spec: PotentialSpec,
    constants: PhysicalConstants,
    count: int = 50,
    points: int = 20001,
) -> list[float]:
    """Positive-energy roots of the single-well condition.

    The finite kinds search the window (mc^2, mc^2 + Vb + Sb); the infinite
    scalar wall returns the lowest ``count`` levels, one per tangent branch.
    """
    mc2 = constants.rest_energy
    hc = constants.hbar_c
    b = spec.b
    if kind == "dirac_scalar_infinite":
        ratio = constants.hbar / (constants.m * constants.c)
        roots = []
        for n in range(1, count + 1):
            lo = (n - 0.5) * math.pi / (2 * b)
            hi = n * math.pi / (2 * b)
            f = lambda kk: math.sin(2 * kk * b) + ratio * kk * math.cos(2 * kk * b)
            kk = brentq(f, lo * (1 + 1e-12), hi, xtol=1e-14, rtol=4 * np.finfo(float).eps)
            roots.append(math.sqrt((hc * kk) ** 2 + mc2 * mc2))
        return roots
    Vb, Sb = _well_heights(kind, spec)
    lower = max(Vb - Sb - mc2, mc2)
    upper = mc2 + Vb + Sb
    if upper <= lower:
        return []
    grid = np.linspace(lower, upper, points)[1:-1]
    vals = np.array([_single_well_smooth(e, kind, spec, constants) for e in grid])
    roots = []
    for i in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]:
        roots.append(brentq(_single_well_smooth, grid[i], grid[i + 1],
                            args=(kind, spec, constants), xtol=1e-12, rtol=4 * np.finfo(float).eps))
    return roots[:count]
