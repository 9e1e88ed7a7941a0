"""Invariant and oracle checks for one configured potential."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousParity, DiracDSPError, NotAnEigenvalue
from .dirac import growing_fraction, singular_energies, t11_closed_form, transfer_matrix
from .model import PhysicalConstants, PotentialSpec
from .oracles import fd_oracle, shooting_root
from .schrodinger import schrodinger_singular_energies, schrodinger_t11, schrodinger_transfer_matrix
from .spectrum import ScanSettings, scan_spectrum, window_for
from .states import (
    boundary_mismatch,
    classify_parity,
    normalize,
    ode_residual,
    overlap,
    solve_coefficients,
)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    limit: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return math.isfinite(self.value) and self.value <= self.limit

    def line(self) -> str:
        tag = "ok  " if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"[{tag}] {self.name:<28s} {self.value:.3e} (limit {self.limit:.1e}){extra}"


def dual_t11_error(spec: PotentialSpec, constants: PhysicalConstants, model: str = "dirac",
                   points: int = 1000) -> tuple[float, float]:
    """(max relative closed-form vs product gap, max |Im| of the scaled T11) over the window."""
    if model == "dirac":
        holes = singular_energies(spec, constants)
        product = lambda E, ref=False: transfer_matrix(E, spec, constants, ref)
        closed = lambda E: t11_closed_form(E, spec, constants, scaled=True)
    else:
        holes = schrodinger_singular_energies(spec)
        product = lambda E, ref=False: schrodinger_transfer_matrix(E, spec, constants, ref)
        closed = lambda E: schrodinger_t11(E, spec, constants, scaled=True)
    worst_rel = worst_im = 0.0
    for iv in window_for(spec, constants, model).intervals:
        for E in np.linspace(iv.lower, iv.upper, points + 2)[1:-1]:
            if any(abs(E - h) <= 1e-9 * max(abs(h), 1.0) for h in holes):
                continue
            # referenced T11 is T11 exp(-2iqb), the closed form with its exp(2iqb) size removed;
            # the bare T11 underflows for deep walls
            T = product(E, True)
            ref = T.T11
            worst_rel = max(worst_rel, abs(closed(E) - ref) / abs(ref))
            g = growing_fraction(T, 0j, spec.b, referenced=True)
            worst_im = max(worst_im, abs(g.imag))
    return worst_rel, worst_im


def run_checks(
    spec: PotentialSpec,
    constants: PhysicalConstants,
    settings: ScanSettings | None = None,
    model: str = "dirac",
    branch: str = "particle",
    max_states: int = 5,
    energy_offset: float = 0.0,
) -> list[Check]:
    """Every check for the spectrum of ``spec``; ``energy_offset`` shifts eigenvalues (negative control)."""
    checks: list[Check] = []
    rel, im = dual_t11_error(spec, constants, model)
    checks.append(Check("dual T11 closed vs product", rel, 1e-10))
    checks.append(Check("Im scaled T11 in window", im, 1e-9))
    states = scan_spectrum(spec, constants, settings, model, branch, with_parity=False)[:max_states]
    fd_levels = None
    if model == "schrodinger":
        fd_levels = fd_oracle(spec, constants, count=len(states))
    for s in states:
        tag = f"{s.branch[0]}{s.n}"
        E = s.E + energy_offset
        try:
            coeffs = solve_coefficients(E, spec, constants, model)
        except NotAnEigenvalue as exc:
            checks.append(Check(f"{tag} coefficients", math.inf, 1e-6, f"NotAnEigenvalue: {exc}"))
            continue
        checks.append(Check(f"{tag} growing tail", coeffs.growth, 1e-6))
        checks.append(Check(f"{tag} continuity", boundary_mismatch(coeffs), 1e-9))
        state = normalize(coeffs)
        checks.append(Check(f"{tag} norm", abs(overlap(state, state).real - 1.0), 1e-10))
        try:
            label = classify_parity(state)
            checks.append(Check(f"{tag} parity", 0.0, 0.0, label))
        except AmbiguousParity as exc:
            checks.append(Check(f"{tag} parity", math.inf, 0.0, str(exc)))
        if model == "dirac":
            xs = np.concatenate([np.linspace(lo, hi, 258)[1:-1] for lo, hi in _interior_regions(spec)])
            checks.append(Check(f"{tag} ODE residual", ode_residual(state, xs), 1e-6))
            try:
                root = shooting_root(E, spec, constants)
                checks.append(Check(f"{tag} shooting oracle", abs(root - E) / abs(E), 1e-6))
            except DiracDSPError as exc:
                checks.append(Check(f"{tag} shooting oracle", math.inf, 1e-6, str(exc)))
        else:
            ref = fd_levels[s.n - 1]
            checks.append(Check(f"{tag} fd oracle", abs(ref - E) / abs(E), 1e-3))
    return checks


def _interior_regions(spec: PotentialSpec):
    a, b = spec.a, spec.b
    tail = 3.0 * b
    regions = [(-tail, -b), (-b, -a), (-a, a), (a, b), (b, tail)]
    return [(lo, hi) for lo, hi in regions if hi > lo]


def report(checks: list[Check]) -> str:
    lines = [c.line() for c in checks]
    failed = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    return "\n".join(lines)
