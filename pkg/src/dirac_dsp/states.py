"""Eigenfunctions: region coefficients, analytic normalisation, evaluation.

A state is stored region by region as

    psi_+ = A exp(i kappa (x - x0)) + B exp(-i kappa (x - x0))
    psi_- = r (A exp(i kappa (x - x0)) - B exp(-i kappa (x - x0)))

with ``x0`` = -b in region I, +b in region V and 0 elsewhere, so the exterior
amplitudes stay O(1) however deep the walls are.  ``r`` is the spinor ratio (zero for the Schrodinger model, which has no
lower component).  Every integral of products of two states is a sum of
``exp(c x)`` antiderivatives, so norms and overlaps are closed form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .dirac import interface_maps, kinematics, region_origins
from .errors import AmbiguousParity, NotAnEigenvalue, ZeroNorm
from .model import PhysicalConstants, PotentialSpec, potential_at, region_index
from .schrodinger import schrodinger_kinematics

if TYPE_CHECKING:
    from .spectrum import BoundState

GROWTH_TOL = 1e-6
PARITY_MARGIN = 1e-6


def region_waves(E: float, spec: PotentialSpec, constants: PhysicalConstants, model: str = "dirac"):
    """(wave numbers, matching ratios, lower-component ratios) for regions I..V."""
    if model == "dirac":
        waves = kinematics(E, spec, constants).region_waves()
        lower = tuple(r for _, r in waves)
    elif model == "schrodinger":
        waves = schrodinger_kinematics(E, spec, constants).region_waves()
        lower = (0j,) * 5
    else:
        raise ValueError(f"unknown model {model!r}")
    return waves, lower


def region_bounds(spec: PotentialSpec) -> tuple[tuple[float, float], ...]:
    a, b = spec.a, spec.b
    return ((-math.inf, -b), (-b, -a), (-a, a), (a, b), (b, math.inf))


@dataclass(frozen=True)
class ChannelCoefficients:
    E: float
    A: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    ratio: np.ndarray
    spec: PotentialSpec
    constants: PhysicalConstants
    model: str = "dirac"

    @property
    def growth(self) -> float:
        """Size of the growing region-I term relative to the decaying one at x=-b."""
        grow, decay = abs(self.A[0]), abs(self.B[0])
        total = math.hypot(grow, decay)
        return grow / total if total else math.inf

    def pairs(self):
        return list(zip(self.A, self.B))


def solve_coefficients(
    E: float,
    spec: PotentialSpec,
    constants: PhysicalConstants,
    model: str = "dirac",
    check: bool = True,
) -> ChannelCoefficients:
    """Back-substitute from ``A5 = 1, B5 = 0`` through M45, M34, M23, M12."""
    waves, lower = region_waves(E, spec, constants, model)
    maps = interface_maps(waves, spec, referenced=True)
    vec = np.array([1.0 + 0j, 0.0 + 0j])
    amps = [vec]
    for m in reversed(maps):
        vec = m.value @ vec
        amps.append(vec)
    amps.reverse()
    coeffs = ChannelCoefficients(
        E=E,
        A=np.array([v[0] for v in amps]),
        B=np.array([v[1] for v in amps]),
        kappa=np.array([w[0] for w in waves]),
        ratio=np.array(lower),
        spec=spec,
        constants=constants,
        model=model,
    )
    if check and not coeffs.growth <= GROWTH_TOL:
        raise NotAnEigenvalue(f"E={E!r} leaves a growing tail (growth={coeffs.growth:.3e})")
    return coeffs


def _int_exp(c: complex, x1: float, x2: float) -> complex:
    """Integral of exp(c x) over [x1, x2]; either end may be infinite."""
    if x1 == -math.inf:
        if not c.real > 0:
            raise ValueError("divergent left tail")
        return cmath.exp(c * x2) / c
    if x2 == math.inf:
        if not c.real < 0:
            raise ValueError("divergent right tail")
        return -cmath.exp(c * x1) / c
    length = x2 - x1
    z = c * length
    if abs(z) < 1e-8:
        return cmath.exp(c * x1) * length * (1 + 0.5 * z)
    return cmath.exp(c * x1) * complex(np.expm1(z)) / c


def _origins(spec: PotentialSpec) -> np.ndarray:
    return np.array(region_origins(spec, referenced=True))


def _region_overlap(A1, B1, k1, r1, A2, B2, k2, r2, x1, x2) -> complex:
    total = 0j
    for s, ca in ((1, A1), (-1, B1)):
        if ca == 0:
            continue
        for t, cb in ((1, A2), (-1, B2)):
            if cb == 0:
                continue
            weight = ca * cb.conjugate() * (1 + s * t * r1 * r2.conjugate())
            if weight == 0:
                continue
            total += weight * _int_exp(1j * (s * k1 - t * k2.conjugate()), x1, x2)
    return total


@dataclass(frozen=True)
class NormalizedState:
    """A bound state with ``A1 = B5 = 0`` scaled to unit norm and real psi_+."""

    E: float
    A: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    ratio: np.ndarray
    spec: PotentialSpec
    constants: PhysicalConstants
    model: str = "dirac"
    norm_constant: complex = 1.0
    bound_state: BoundState | None = None

    @property
    def decay_length(self) -> float:
        return 1.0 / abs(self.kappa[0].imag)

    def spinor(self, x):
        return eval_spinor(self, x)


def overlap(s1, s2, x_lo: float = -math.inf, x_hi: float = math.inf) -> complex:
    """Closed-form integral of psi1_+ conj(psi2_+) + psi1_- conj(psi2_-) over [x_lo, x_hi]."""
    total = 0j
    origins = _origins(s1.spec)
    for j, (lo, hi) in enumerate(region_bounds(s1.spec)):
        lo, hi = max(lo, x_lo), min(hi, x_hi)
        if not hi > lo:
            continue
        x0 = origins[j]
        total += _region_overlap(
            s1.A[j], s1.B[j], s1.kappa[j], s1.ratio[j],
            s2.A[j], s2.B[j], s2.kappa[j], s2.ratio[j], lo - x0, hi - x0,
        )
    return total


def normalize(coeffs: ChannelCoefficients, phase_samples: int = 4097) -> NormalizedState:
    A = coeffs.A.copy()
    B = coeffs.B.copy()
    A[0] = 0.0  # bound-state condition; the residual growing term is dropped
    B[4] = 0.0
    raw = NormalizedState(coeffs.E, A, B, coeffs.kappa, coeffs.ratio, coeffs.spec,
                          coeffs.constants, coeffs.model)
    norm = overlap(raw, raw).real
    if not norm > 0 or not math.isfinite(norm):
        raise ZeroNorm(f"norm {norm!r} at E={coeffs.E!r}")
    scale = 1.0 / math.sqrt(norm)
    b = coeffs.spec.b
    xs = np.linspace(-b, b, phase_samples)[1:-1]
    plus, _ = eval_spinor(raw, xs)
    mags = np.abs(plus)
    i0 = int(np.argmax(mags >= (1 - 1e-6) * mags.max()))
    C = scale * cmath.exp(-1j * cmath.phase(plus[i0]))
    return NormalizedState(coeffs.E, A * C, B * C, coeffs.kappa, coeffs.ratio, coeffs.spec,
                           coeffs.constants, coeffs.model, norm_constant=C)


def normalized_state(E: float, spec: PotentialSpec, constants: PhysicalConstants, model: str = "dirac",
                     check: bool = True) -> NormalizedState:
    return normalize(solve_coefficients(E, spec, constants, model, check=check))


def eval_spinor(state, x):
    """(psi_+, psi_-) at ``x`` (scalar or array)."""
    xa = np.asarray(x, dtype=float)
    idx = region_index(state.spec, xa)
    kap = state.kappa[idx]
    A, B, r = state.A[idx], state.B[idx], state.ratio[idx]
    u = xa - _origins(state.spec)[idx]
    with np.errstate(over="ignore", invalid="ignore"):
        forward = A * np.exp(1j * kap * u)
        backward = B * np.exp(-1j * kap * u)
    # zeroed tail amplitudes times overflowing exponentials
    forward = np.where(A == 0, 0j, forward)
    backward = np.where(B == 0, 0j, backward)
    plus = forward + backward
    minus = r * (forward - backward)
    if np.ndim(x) == 0:
        return complex(plus), complex(minus)
    return plus, minus


def density(state, x):
    plus, minus = eval_spinor(state, x)
    return np.abs(plus) ** 2 + np.abs(minus) ** 2


def probe_extent(state, decay_lengths: float = 5.0) -> float:
    return state.spec.b + decay_lengths * state.decay_length


def classify_parity(state, probes: int = 64) -> str:
    """Parity of psi_+ ('even' or 'odd'); psi_- carries the other one."""
    xs = np.linspace(0.0, probe_extent(state, 3.0), probes + 1)[1:]
    right, _ = eval_spinor(state, xs)
    left, _ = eval_spinor(state, -xs)
    d_even = float(np.max(np.abs(right - left)))
    d_odd = float(np.max(np.abs(right + left)))
    small, large = sorted((d_even, d_odd))
    if not small <= PARITY_MARGIN * large:
        raise AmbiguousParity(f"even residual {d_even:.3e} vs odd residual {d_odd:.3e}")
    return "even" if d_even < d_odd else "odd"


def count_nodes(state, samples: int = 4096) -> int:
    """Sign changes of Re psi_+ inside five decay lengths of the well."""
    half = probe_extent(state, 5.0)
    xs = np.linspace(-half, half, samples + 2)[1:-1]
    plus, _ = eval_spinor(state, xs)
    s = np.sign(plus.real)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def boundary_mismatch(coeffs) -> float:
    """Largest relative jump of either component across x = -b, -a, a, b."""
    spec = coeffs.spec
    worst = 0.0
    scale = 0.0
    for j, x in enumerate((-spec.b, -spec.a, spec.a, spec.b)):
        if j in (1, 2) and spec.a == 0.0:
            continue
        left = _region_value(coeffs, j, x)
        right = _region_value(coeffs, j + 1, x)
        scale = max(scale, *(abs(v) for v in left + right))
        worst = max(worst, *(abs(l - r) for l, r in zip(left, right)))
    return worst / scale if scale else 0.0


def _region_value(coeffs, j: int, x: float) -> tuple[complex, complex]:
    k, A, B, r = coeffs.kappa[j], coeffs.A[j], coeffs.B[j], coeffs.ratio[j]
    u = x - _origins(coeffs.spec)[j]
    f = A * cmath.exp(1j * k * u)
    g = B * cmath.exp(-1j * k * u)
    return f + g, r * (f - g)


def ode_residual(state, x: np.ndarray, h: float | None = None) -> float:
    """Max relative residual of the coupled first-order Dirac equations.

    Derivatives come from a five-point finite-difference stencil.
    """
    if state.model != "dirac":
        raise ValueError("ode_residual applies to Dirac states")
    spec, const = state.spec, state.constants
    mc2, hc, E = const.rest_energy, const.hbar_c, state.E
    x = np.asarray(x, dtype=float)
    if h is None:
        h = 1e-3 / max(abs(k) for k in state.kappa)

    def deriv(component: int) -> np.ndarray:
        vals = [eval_spinor(state, x + o * h)[component] for o in (-2, -1, 1, 2)]
        return (vals[0] - 8 * vals[1] + 8 * vals[2] - vals[3]) / (12 * h)

    plus, minus = eval_spinor(state, x)
    V = np.array([potential_at(spec, xi, "vector") for xi in x])
    S = np.array([potential_at(spec, xi, "scalar") for xi in x])
    r1 = (mc2 + V + S - E) * plus - 1j * hc * deriv(1)
    r2 = -1j * hc * deriv(0) + (-mc2 + V - S - E) * minus
    scale = abs(E) * max(np.max(np.abs(plus)), np.max(np.abs(minus)))
    return float(max(np.max(np.abs(r1)), np.max(np.abs(r2))) / scale)
