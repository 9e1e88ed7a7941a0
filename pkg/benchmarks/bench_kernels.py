"""Time the compiled and numpy scan kernels on the same energy grids.

    python3 benchmarks/bench_kernels.py [--points 20001] [--repeat 20]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from dirac_dsp.kernel import DIRAC, SCHRODINGER, available_backends, use_backend
from dirac_dsp.model import PhysicalConstants, PotentialSpec, bound_window
from dirac_dsp.spectrum import scan_spectrum

CASES = {
    "VDSP (20000, 50000)": (PotentialSpec.vector(20000, 50000), DIRAC),
    "SDSP (50000, 50000)": (PotentialSpec.scalar(50000, 50000), DIRAC),
    "Schrodinger (10000, 50000)": (PotentialSpec.vector(10000, 50000), SCHRODINGER),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=20001)
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()

    const = PhysicalConstants(c=137.0)
    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; timing the numpy fallback only")
    print(f"{'case':<28s} " + " ".join(f"{name:>12s}" for name in backends) + "   speedup  max|diff|")
    for label, (spec, model) in CASES.items():
        if model == DIRAC:
            iv = bound_window(spec, const).intervals[0]
            lo, hi = iv.lower, iv.upper
        else:
            lo, hi = 0.0, spec.Vb
        E = np.linspace(lo, hi, args.points + 2)[1:-1]
        params = (model, spec.Va, spec.Vb, spec.Sa, spec.Sb, spec.a, spec.b, const.m, const.hbar, const.c)
        times, values = {}, {}
        for name, fn in backends.items():
            values[name] = fn(E, *params)
            times[name] = min(timeit.repeat(lambda: fn(E, *params), number=1, repeat=args.repeat))
        row = f"{label:<28s} " + " ".join(f"{times[n] * 1e3:10.2f}ms" for n in backends)
        if "cython" in backends:
            ok = np.isfinite(values["python"]) & np.isfinite(values["cython"])
            diff = float(np.max(np.abs(values["python"][ok] - values["cython"][ok])))
            row += f"   {times['python'] / times['cython']:6.2f}x  {diff:.1e}"
        print(row)

    print("\nsingle-energy calls (the refinement and subdivision pattern)")
    spec, model = CASES["VDSP (20000, 50000)"]
    params = (model, spec.Va, spec.Vb, spec.Sa, spec.Sb, spec.a, spec.b, const.m, const.hbar, const.c)
    one = np.array([40000.0])
    for name, fn in backends.items():
        per = min(timeit.repeat(lambda: fn(one, *params), number=2000, repeat=5)) / 2000
        print(f"  {name:<8s} {per * 1e6:8.2f} us/call")

    print("\nfull spectrum scan, all particle states")
    for label, (spec, model) in CASES.items():
        kind = "dirac" if model == DIRAC else "schrodinger"
        cells = []
        for name in backends:
            with use_backend(name):
                t = min(timeit.repeat(lambda: scan_spectrum(spec, const, model=kind, with_parity=False),
                                      number=1, repeat=3))
            cells.append(f"{name} {t * 1e3:8.1f}ms")
        print(f"  {label:<28s} " + "  ".join(cells))


if __name__ == "__main__":
    main()
