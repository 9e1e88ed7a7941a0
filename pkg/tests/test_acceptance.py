"""Acceptance criteria, each run at its stated tolerance.

Every criterion prints one ``[PASS]``/``[FAIL]`` line with the measured
numbers; run ``python3 tests/test_acceptance.py`` for the lines alone.
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np
import pytest
from scipy.signal import find_peaks

from dirac_dsp.dirac import single_well_roots
from dirac_dsp.dynamics import WavePacket, autocorrelation_period, period
from dirac_dsp.model import PhysicalConstants, PotentialSpec, bound_window
from dirac_dsp.oracles import fd_oracle, shooting_root
from dirac_dsp.schrodinger import infinite_well_levels
from dirac_dsp.spectrum import scan_spectrum
from dirac_dsp.states import (
    boundary_mismatch,
    classify_parity,
    count_nodes,
    density,
    normalize,
    normalized_state,
    ode_residual,
    overlap,
    solve_coefficients,
)
from dirac_dsp.verify import dual_t11_error

sys.path.insert(0, str(Path(__file__).parent))
try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # pragma: no cover - standalone run without pytest on the path
    ACCEPTANCE_LINES = []

C = PhysicalConstants(c=137.0)
ENERGY_TOL = 2.0

VDSP_TABLE = {
    0: [36085, 44246, 52660, 60964, 68254],
    10000: [32325, 40323, 48890, 56839, 64679],
    20000: [33124, 34783, 45988, 53502, 60624, 68125],
    30000: [35693, 36655, 52348, 57389, 64365],
    40000: [37475, 38240, 57687, 60339, 68554],
    50000: [38948, 39831, 61189, 62552],
}
SDSP_TABLE = {
    0: [20708, 25901, 33130, 41443, 50290, 59317],
    10000: [26381, 27912, 36321, 44871, 52510, 60547],
    20000: [28963, 29238, 42876, 49214, 54937, 62666],
    30000: [29994, 30042, 50417, 53138, 57791, 66274],
    40000: [30539, 30548, 55317, 55730, 63393],
    50000: [30887, 30888, 57204, 57251],
}
# None marks the reference entry that cannot be an eigenvalue (outside the window)
EDSP_TABLE = {
    0: [20954, 26527, 33944, None, 50995, 59814, 68033],
    5000: [26990, 29182, 37672, 46322, 54189, 62385],
    10000: [30255, 30882, 43879, 50724, 57152, 65381],
    15000: [31791, 31981, 50973, 54503, 60328],
    20000: [32665, 32731, 56190, 57167, 65430],
    25000: [33250, 33276, 58693, 58910],
}


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} | {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def energies(spec, branch="particle", model="dirac", constants=C):
    return [s.E for s in scan_spectrum(spec, constants, model=model, branch=branch, with_parity=False)
            if s.branch == branch]


def table_deviation(table, make_spec, skip=()):
    """(worst |E - reference|, count mismatches) over a reference table."""
    worst, problems = 0.0, []
    for value, expected in table.items():
        got = energies(make_spec(value))
        for n, ref in enumerate(expected, start=1):
            if ref is None or (value, n) in skip:
                continue
            if n > len(got):
                problems.append(f"{value}: n={n} missing")
                continue
            worst = max(worst, abs(got[n - 1] - ref))
        if len(got) != len(expected):
            problems.append(f"{value}: {len(got)} states vs {len(expected)} expected")
    return worst, problems


def criterion_1():
    worst, problems = table_deviation(VDSP_TABLE, lambda v: PotentialSpec.vector(v, 50000))
    n6 = energies(PotentialSpec.vector(20000, 50000))[5]
    ok = worst <= ENERGY_TOL and not problems and abs(n6 - 68125) <= ENERGY_TOL
    return ok, f"max |dE| = {worst:.3f} over 32 entries; V_a=20000 n=6 at {n6:.2f}; count mismatches: {problems or 'none'}"


def criterion_2():
    worst = 0.0
    extras = []
    for value, expected in SDSP_TABLE.items():
        got = energies(PotentialSpec.scalar(value, 50000))
        worst = max(worst, max(abs(g - r) for g, r in zip(got, expected)))
        if len(got) < len(expected):
            worst = math.inf
        if len(got) > len(expected):
            extras.append(f"S_a={value}: extra {', '.join(f'{e:.1f}' for e in got[len(expected):])}")
    pair = energies(PotentialSpec.scalar(50000, 50000))[:2]
    resolved = len(pair) == 2 and pair[1] - pair[0] > 0 and abs(pair[0] - 30887) <= 2 and abs(pair[1] - 30888) <= 2
    mirror = 0.0
    for value in SDSP_TABLE:
        spec = PotentialSpec.scalar(value, 50000)
        part, anti = energies(spec), energies(spec, "antiparticle")
        if len(part) != len(anti):
            mirror = math.inf
        mirror = max(mirror, max(abs(p + a) for p, a in zip(part, anti)))
    ok = worst <= ENERGY_TOL and resolved and mirror <= 2e-4
    return ok, (f"max |dE| = {worst:.3f}; doublet {pair[0]:.3f} / {pair[1]:.3f} (split {pair[1] - pair[0]:.3f}); "
                f"mirror max |E+ + E-| = {mirror:.1e}; states beyond the reference: {'; '.join(extras) or 'none'}")


def criterion_3():
    worst, problems = table_deviation(EDSP_TABLE, lambda v: PotentialSpec.equal(v, 25000))
    spec = PotentialSpec.equal(0, 25000)
    e4 = energies(spec)[3]
    window = bound_window(spec, C).intervals[0]
    oracle = shooting_root(e4, spec, C)
    agree = abs(oracle - e4) / e4
    ok = worst <= ENERGY_TOL and not problems and window.lower < e4 < window.upper and agree <= 1e-6
    return ok, (f"max |dE| = {worst:.3f}; S_a=0 n=4 solver value {e4:.3f} in ({window.lower:g}, {window.upper:g}), "
                f"shooting oracle {oracle:.3f} (rel {agree:.1e}); reference entry 422623, column-pattern guess 42623 "
                f"differs by {abs(e4 - 42623):.0f}; count mismatches: {problems or 'none'}")


def criterion_4():
    v = bound_window(PotentialSpec.vector(0, 50000), C)
    s = bound_window(PotentialSpec.scalar(0, 50000), C)
    got_v = [(iv.lower, iv.upper, iv.branch) for iv in v.intervals]
    got_s = [(iv.lower, iv.upper, iv.branch) for iv in s.intervals]
    ok = (got_v == [(31231.0, 68769.0, "particle")]
          and got_s == [(18769.0, 68769.0, "particle"), (-68769.0, -18769.0, "antiparticle")])
    return ok, f"VDSP case {v.case_label} {got_v}; SDSP case {s.case_label} {got_s}"


def _packet(spec, model="dirac"):
    st = scan_spectrum(spec, C, model=model, with_parity=False)
    return WavePacket(normalized_state(st[0].E, spec, C, model), normalized_state(st[1].E, spec, C, model))


def criterion_5():
    parts, ok = [], True
    for label, spec, model, expected in (
        ("VDSP", PotentialSpec.vector(10000, 50000), "dirac", 0.000786),
        ("SDSP", PotentialSpec.scalar(10000, 50000), "dirac", 0.0041),
        ("Schrodinger", PotentialSpec.vector(10000, 50000), "schrodinger", 0.00184),
    ):
        pk = _packet(spec, model)
        T = period(pk)
        Tac = autocorrelation_period(pk)
        rel = abs(T - expected) / expected
        rel_ac = abs(Tac - T) / T
        ok &= rel <= 0.01 and rel_ac <= 1e-3
        parts.append(f"{label} T={T:.6g} (dE={pk.E2 - pk.E1:.1f}, {rel:.2%} from {expected}), autocorr {rel_ac:.1e}")
    T_v = 2 * math.pi / 7998
    ok &= abs(period(_packet(PotentialSpec.vector(10000, 50000))) - T_v) / T_v <= 0.01
    return ok, "; ".join(parts)


def criterion_6():
    spec = PotentialSpec.vector(0, 50000)
    st = scan_spectrum(spec, C, with_parity=False)
    counts, peaks = [], []
    for s in st[:2]:
        ns = normalized_state(s.E, spec, C)
        counts.append(count_nodes(ns))
        xs = np.linspace(-0.05, 0.05, 8001)
        peaks.append(len(find_peaks(density(ns, xs))[0]))
    ok = counts == [3, 4]
    return ok, (f"sign changes of Re psi_+ for n=1,2: {counts} (required [3, 4]); "
                f"for comparison rho has {peaks} peaks")


def criterion_7():
    levels = energies(PotentialSpec.vector(0, 50000), model="schrodinger")[:5]
    law = [abs(e - 2000 * n * n) / e for n, e in enumerate(levels, start=1)]
    exact = infinite_well_levels(0.02, C, 1)[0]
    e1 = {}
    for vb in (1e5, 1e6, 1e7):
        e1[vb] = energies(PotentialSpec(Va=0, Vb=vb, a=0.0, b=0.02), model="schrodinger")[0]
    errs = [abs(e1[v] - exact) / exact for v in (1e5, 1e6, 1e7)]
    monotone = errs[0] > errs[1] > errs[2] and all(e < exact for e in e1.values())
    ok = max(law) <= 0.25 and monotone and errs[2] <= 1e-3
    return ok, (f"max |E_n - 2000n^2|/E_n = {max(law):.1%}; E1(V_b) = "
                + ", ".join(f"{e1[v]:.2f}" for v in e1)
                + f" vs {exact:.2f}: rel errors " + ", ".join(f"{x:.2%}" for x in errs)
                + f"; monotone={monotone}; required 0.10% at V_b=1e7")


def criterion_8():
    rows = []
    dual, im = 0.0, 0.0
    for spec in (PotentialSpec.vector(0, 50000), PotentialSpec.vector(20000, 50000),
                 PotentialSpec.scalar(50000, 50000), PotentialSpec.equal(10000, 25000)):
        d, i = dual_t11_error(spec, C)
        dual, im = max(dual, d), max(im, i)
    ds, _ = dual_t11_error(PotentialSpec.vector(10000, 50000), C, "schrodinger")
    dual = max(dual, ds)
    norm = cont = ode = shoot = 0.0
    for spec in (PotentialSpec.vector(10000, 50000), PotentialSpec.scalar(10000, 50000),
                 PotentialSpec.equal(0, 25000)):
        for s in scan_spectrum(spec, C, with_parity=False)[:3]:
            co = solve_coefficients(s.E, spec, C)
            ns = normalize(co)
            norm = max(norm, abs(overlap(ns, ns).real - 1))
            cont = max(cont, boundary_mismatch(co))
            xs = np.concatenate([np.linspace(lo, hi, 258)[1:-1] for lo, hi in
                                 ((-0.06, -0.02), (-0.02, -0.01), (-0.01, 0.01), (0.01, 0.02), (0.02, 0.06))])
            ode = max(ode, ode_residual(ns, xs))
            shoot = max(shoot, abs(shooting_root(s.E, spec, C) - s.E) / s.E)
    fd = 0.0
    for spec in (PotentialSpec.vector(0, 50000), PotentialSpec.vector(10000, 50000)):
        got = energies(spec, model="schrodinger")
        ref = fd_oracle(spec, C, count=len(got))
        fd = max(fd, max(abs(r - g) / g for r, g in zip(ref, got)))
    single = 0.0
    for spec, kind in ((PotentialSpec.vector(0, 50000, a=0.0), "dirac_vector"),
                       (PotentialSpec.scalar(0, 50000), "dirac_scalar"),
                       (PotentialSpec.equal(0, 25000), "dirac_mixed")):
        got = energies(spec)
        ref = single_well_roots(kind, spec, C)
        if len(got) != len(ref):
            single = math.inf
        single = max(single, max(abs(g - r) / r for g, r in zip(got, ref)))
    checks = {
        "dual T11": (dual, 1e-10), "Im T11": (im, 1e-9), "norm": (norm, 1e-10), "continuity": (cont, 1e-9),
        "ODE": (ode, 1e-6), "shooting": (shoot, 1e-6), "fd": (fd, 1e-3), "single well": (single, 1e-8),
    }
    ok = all(v <= lim for v, lim in checks.values())
    return ok, ", ".join(f"{k} {v:.1e}<={lim:.0e}" for k, (v, lim) in checks.items())


def criterion_9():
    spec = PotentialSpec.vector(10, 50, a=1.0, b=2.0)
    e_schr = energies(spec, model="schrodinger")[0]
    errs = []
    for c in (137.0, 274.0):
        const = PhysicalConstants(c=c)
        e_dirac = energies(spec, constants=const)[0]
        errs.append(abs(e_dirac - const.rest_energy - e_schr) / e_schr)
    ok = errs[0] <= 0.009 and errs[1] < errs[0]
    return ok, f"relative gap {errs[0]:.2e} at c=137 (limit 9e-3), {errs[1]:.2e} at c=274"


def criterion_10():
    parts, ok = [], True
    for label, spec in (("VDSP", PotentialSpec.vector(0, 50000)), ("SDSP", PotentialSpec.scalar(0, 50000)),
                        ("EDSP", PotentialSpec.equal(0, 25000))):
        labels = [s.parity_plus for s in scan_spectrum(spec, C)]
        want = ["even" if n % 2 == 0 else "odd" for n in range(len(labels))]
        ok &= labels == want
        parts.append(f"{label} {''.join(l[0] for l in labels)}")
    swap = [classify_parity(normalized_state(E, PotentialSpec.vector(10000, 50000), C))
            for E in energies(PotentialSpec.vector(10000, 50000))[:2]]
    ok &= swap == ["odd", "even"]
    parts.append(f"VDSP V_a=10000 n=1,2: {swap}")
    return ok, "; ".join(parts)


CRITERIA = {
    1: ("VDSP eigenvalue sweep over V_a", criterion_1),
    2: ("SDSP eigenvalue sweep over S_a, doublet, mirror", criterion_2),
    3: ("EDSP eigenvalue sweep over S_a = V_a", criterion_3),
    4: ("bound windows", criterion_4),
    5: ("wave-packet periods", criterion_5),
    6: ("node counts", criterion_6),
    7: ("Schrodinger n^2 law and infinite-well limit", criterion_7),
    8: ("property suite", criterion_8),
    9: ("nonrelativistic limit", criterion_9),
    10: ("parity pattern", criterion_10),
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    title, fn = CRITERIA[number]
    ok, detail = fn()
    record(number, title, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for number, (title, fn) in sorted(CRITERIA.items()):
        ok, detail = fn()
        record(number, title, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
