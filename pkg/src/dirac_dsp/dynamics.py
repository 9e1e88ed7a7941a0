"""Two-level wave packets and their tunnelling oscillation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DegenerateSplitting, MismatchedPotential
from .states import NormalizedState, eval_spinor, overlap

_SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class WavePacket:
    state1: NormalizedState
    state2: NormalizedState
    weights: tuple[complex, complex] = (_SQRT_HALF, _SQRT_HALF)

    def __post_init__(self) -> None:
        s1, s2 = self.state1, self.state2
        if s1.spec != s2.spec or s1.constants != s2.constants or s1.model != s2.model:
            raise MismatchedPotential("packet states come from different potentials or models")
        w1, w2 = self.weights
        total = abs(w1) ** 2 + abs(w2) ** 2
        if not abs(total - 1.0) <= 1e-12:
            raise ValueError(f"weights must satisfy |w1|^2 + |w2|^2 = 1, got {total!r}")
        if s1.E > s2.E:
            raise ValueError("state1 must be the lower level")

    @property
    def E1(self) -> float:
        return self.state1.E

    @property
    def E2(self) -> float:
        return self.state2.E

    @property
    def hbar(self) -> float:
        return self.state1.constants.hbar


def period(packet: WavePacket) -> float:
    """``2 pi hbar / (E2 - E1)``."""
    split = packet.E2 - packet.E1
    if not split > 1e-12 * max(abs(packet.E1), abs(packet.E2)):
        raise DegenerateSplitting(f"splitting {split!r} too small for a finite period")
    return 2 * math.pi * packet.hbar / split


def packet_spinor(packet: WavePacket, x, t: float):
    w1, w2 = packet.weights
    h = packet.hbar
    p1, m1 = eval_spinor(packet.state1, x)
    p2, m2 = eval_spinor(packet.state2, x)
    c1 = w1 * np.exp(-1j * packet.E1 * t / h)
    c2 = w2 * np.exp(-1j * packet.E2 * t / h)
    return c1 * p1 + c2 * p2, c1 * m1 + c2 * m2


def packet_density(packet: WavePacket, x, t: float):
    plus, minus = packet_spinor(packet, x, t)
    return np.abs(plus) ** 2 + np.abs(minus) ** 2


def side_population(packet: WavePacket, t: float, side: str = "left") -> float:
    """Probability on ``x < 0`` (left) or ``x > 0`` (right), from closed-form overlaps."""
    if side == "left":
        lo, hi = -math.inf, 0.0
    elif side == "right":
        lo, hi = 0.0, math.inf
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    s1, s2 = packet.state1, packet.state2
    w1, w2 = packet.weights
    n11 = overlap(s1, s1, lo, hi).real
    n22 = overlap(s2, s2, lo, hi).real
    n12 = overlap(s1, s2, lo, hi)
    # only the phase difference survives in the cross term
    beat = np.exp(-1j * (packet.E1 - packet.E2) * t / packet.hbar)
    return float(abs(w1) ** 2 * n11 + abs(w2) ** 2 * n22 + 2 * (w1 * np.conj(w2) * beat * n12).real)


def frame_times(packet: WavePacket, frames: int = 8) -> np.ndarray:
    """``frames + 1`` instants covering one period, both ends included."""
    return np.linspace(0.0, period(packet), frames + 1)


def autocorrelation_period(
    packet: WavePacket,
    x: np.ndarray | None = None,
    t_max: float | None = None,
    samples: int = 256,
) -> float:
    """Return time of the density autocorrelation ``<rho(0) rho(t)> / <rho(0)^2>``.

    ``t_max`` only sets the search window (default: three periods); the
    estimate itself is the first interior maximum following the first
    minimum, polished with a bounded scalar search.
    """
    if x is None:
        half = packet.state1.spec.b + 5 * max(packet.state1.decay_length, packet.state2.decay_length)
        x = np.linspace(-half, half, 1024)
    if t_max is None:
        t_max = 3 * period(packet)
    rho0 = packet_density(packet, x, 0.0)
    ref = float(np.dot(rho0, rho0))

    def corr(t: float) -> float:
        return float(np.dot(rho0, packet_density(packet, x, t))) / ref

    ts = np.linspace(0.0, t_max, samples + 1)
    cs = np.array([corr(t) for t in ts])
    i = 1
    while i < samples and cs[i] <= cs[i - 1]:
        i += 1
    while i < samples and cs[i + 1] >= cs[i]:
        i += 1
    if i >= samples:
        raise DegenerateSplitting("no autocorrelation revival inside the search window")
    res = minimize_scalar(lambda t: -corr(t), bounds=(ts[i - 1], ts[i + 1]), method="bounded",
                          options={"xatol": 1e-12 * t_max})
    return float(res.x)
