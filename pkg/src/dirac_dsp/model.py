"""Physical constants, the five-region double square-well, and bound windows.

Units are atomic (m = hbar = 1) with c configurable.  The regions follow the
left-closed convention

    I: x <= -b,  II: -b < x <= -a,  III: -a < x <= a,  IV: a < x <= b,  V: x > b
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Literal

import numpy as np

from .errors import InvalidPotential

Branch = Literal["particle", "antiparticle"]
PotentialKind = Literal["vector", "scalar"]

C_ATOMIC = 137.036
#: light speed that gives the reference rest energy 18769 = 137**2
C_REPRODUCTION = 137.0


@dataclass(frozen=True)
class PhysicalConstants:
    m: float = 1.0
    hbar: float = 1.0
    c: float = C_ATOMIC

    def __post_init__(self) -> None:
        for name in ("m", "hbar", "c"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")

    @property
    def rest_energy(self) -> float:
        return self.m * self.c * self.c

    @property
    def hbar_c(self) -> float:
        return self.hbar * self.c


@dataclass(frozen=True)
class PotentialSpec:
    """Symmetric scalar/vector double square-well.

    ``Vb``/``Sb`` confine (regions I and V), ``Va``/``Sa`` form the central
    barrier (region III) of half-width ``a``; the well extends to ``|x| = b``.
    """

    Va: float = 0.0
    Vb: float = 0.0
    Sa: float = 0.0
    Sb: float = 0.0
    a: float = 0.01
    b: float = 0.02

    def __post_init__(self) -> None:
        values = (self.Va, self.Vb, self.Sa, self.Sb, self.a, self.b)
        if not all(math.isfinite(v) for v in values):
            raise InvalidPotential(f"non-finite potential parameter in {values}")
        if not 0.0 <= self.a <= self.b:
            raise InvalidPotential(f"need 0 <= a <= b, got a={self.a}, b={self.b}")
        if self.b <= 0.0:
            raise InvalidPotential("confinement half-width b must be positive")
        if not 0.0 <= self.Va <= self.Vb:
            raise InvalidPotential(f"need 0 <= Va <= Vb, got Va={self.Va}, Vb={self.Vb}")
        if not 0.0 <= self.Sa <= self.Sb:
            raise InvalidPotential(f"need 0 <= Sa <= Sb, got Sa={self.Sa}, Sb={self.Sb}")

    @classmethod
    def vector(cls, Va: float, Vb: float, a: float = 0.01, b: float = 0.02) -> PotentialSpec:
        return cls(Va=Va, Vb=Vb, a=a, b=b)

    @classmethod
    def scalar(cls, Sa: float, Sb: float, a: float = 0.01, b: float = 0.02) -> PotentialSpec:
        return cls(Sa=Sa, Sb=Sb, a=a, b=b)

    @classmethod
    def equal(cls, Sa: float, Sb: float, a: float = 0.01, b: float = 0.02) -> PotentialSpec:
        """Scalar and vector wells of identical shape (S = V)."""
        return cls(Va=Sa, Vb=Sb, Sa=Sa, Sb=Sb, a=a, b=b)

    def with_field(self, name: str, value: float) -> PotentialSpec:
        """Copy with one swept field replaced; ``both_equal`` sets Va = Sa."""
        if name == "both_equal":
            return replace(self, Va=value, Sa=value)
        if name not in {"Va", "Vb", "Sa", "Sb", "a", "b"}:
            raise KeyError(name)
        return replace(self, **{name: value})

    def nonrelativistic(self) -> PotentialSpec:
        """Vector-only well with heights Va+Sa and Vb+Sb."""
        return PotentialSpec(Va=self.Va + self.Sa, Vb=self.Vb + self.Sb, a=self.a, b=self.b)

    @property
    def family(self) -> str:
        if self.Sb == 0 and self.Sa == 0:
            return "VDSP"
        if self.Vb == 0 and self.Va == 0:
            return "SDSP"
        if self.Sb == self.Vb and self.Sa == self.Va:
            return "EDSP"
        return "mixed"


def region_of(spec: PotentialSpec, x: float) -> int:
    """Region number 1..5 containing ``x``."""
    if x <= -spec.b:
        return 1
    if x <= -spec.a:
        return 2
    if x <= spec.a:
        return 3
    if x <= spec.b:
        return 4
    return 5


def region_index(spec: PotentialSpec, x: np.ndarray) -> np.ndarray:
    """Vectorised :func:`region_of`, returning 0-based indices."""
    x = np.asarray(x, dtype=float)
    edges = np.array([-spec.b, -spec.a, spec.a, spec.b])
    return np.searchsorted(edges, x, side="left")


def potential_at(spec: PotentialSpec, x: float, kind: PotentialKind = "vector") -> float:
    if kind == "vector":
        outer, inner = spec.Vb, spec.Va
    elif kind == "scalar":
        outer, inner = spec.Sb, spec.Sa
    else:
        raise ValueError(f"kind must be 'vector' or 'scalar', got {kind!r}")
    return (outer, 0.0, inner, 0.0, outer)[region_of(spec, x) - 1]


@dataclass(frozen=True)
class WindowInterval:
    lower: float
    upper: float
    branch: Branch = "particle"

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def __contains__(self, energy: float) -> bool:
        return self.lower < energy < self.upper


@dataclass(frozen=True)
class EnergyWindow:
    case_label: Literal["A", "B", "C"]
    intervals: tuple[WindowInterval, ...] = field(default_factory=tuple)
    E_U: float = math.nan
    E_L: float = math.nan

    @property
    def empty(self) -> bool:
        return not self.intervals

    def branch(self, branch: Branch) -> tuple[WindowInterval, ...]:
        return tuple(iv for iv in self.intervals if iv.branch == branch)

    def contains(self, energy: float) -> bool:
        return any(energy in iv for iv in self.intervals)


def bound_window(spec: PotentialSpec, constants: PhysicalConstants) -> EnergyWindow:
    """Energy intervals where k is real and q is purely imaginary."""
    mc2 = constants.rest_energy
    E_U = spec.Vb + spec.Sb + mc2
    E_L = spec.Vb - spec.Sb - mc2
    gap = spec.Vb - spec.Sb
    if gap >= 2.0 * mc2:
        label, candidates = "A", [(E_L, E_U, "particle")]
    elif gap >= 0.0:
        label, candidates = "B", [(mc2, E_U, "particle")]
    else:
        label, candidates = "C", [(mc2, E_U, "particle"), (E_L, -mc2, "antiparticle")]
    intervals = tuple(
        WindowInterval(lo, hi, br) for lo, hi, br in candidates if hi > lo
    )
    return EnergyWindow(label, intervals, E_U=E_U, E_L=E_L)


def schrodinger_window(spec: PotentialSpec) -> EnergyWindow:
    """The nonrelativistic window 0 < E < Vb (vector part of ``spec`` only)."""
    intervals = (WindowInterval(0.0, spec.Vb),) if spec.Vb > 0 else ()
    return EnergyWindow("B", intervals, E_U=spec.Vb, E_L=0.0)
