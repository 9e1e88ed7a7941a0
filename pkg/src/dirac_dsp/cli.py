"""``dirac-dsp`` command line: window, spectrum, wavefunction, evolve, verify.

Exit codes: 0 success, 1 configuration error, 2 no (or too few) bound states,
3 convergence failure, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from contextlib import contextmanager

import numpy as np

from .config import BRANCHES, MODELS, ConfigError, RunConfig, load_config
from .dynamics import WavePacket, frame_times, packet_density, period
from .errors import ConvergenceFailure, DiracDSPError, NoBoundStates
from .spectrum import scan_spectrum, sweep, window_for
from .states import density, eval_spinor, normalized_state
from .verify import report, run_checks

EXIT_OK, EXIT_CONFIG, EXIT_NO_STATES, EXIT_CONVERGENCE, EXIT_VERIFY = 0, 1, 2, 3, 4

SWEEP_FIELDS = ("Va", "Vb", "Sa", "Sb", "a", "b", "both_equal")


def fmt(value: float) -> str:
    """CSV number format: scientific, 12 significant digits."""
    return f"{value:.11e}"


def fmt_energy(value: float) -> str:
    return f"{value:.12g}"


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def parse_sweep(text: str) -> tuple[str, list[float]]:
    """``field=start:stop:step`` with ``stop`` included when it lies on the grid."""
    try:
        name, rng = text.split("=", 1)
        start, stop, step = (float(v) for v in rng.split(":"))
    except ValueError as exc:
        raise ConfigError(f"sweep must look like field=start:stop:step, got {text!r}") from exc
    name = name.strip()
    if name not in SWEEP_FIELDS:
        raise ConfigError(f"cannot sweep {name!r}; choose from {SWEEP_FIELDS}")
    if not all(math.isfinite(v) for v in (start, stop, step)):
        raise ConfigError("sweep bounds must be finite")
    if step == 0 or (stop - start) * step < 0:
        raise ConfigError(f"sweep step {step!r} does not move from {start!r} towards {stop!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return name, [start + i * step for i in range(count)]


@contextmanager
def _sink(path: str):
    if path and path != "-":
        with open(path, "w", newline="", encoding="ascii") as fh:
            yield fh
    else:
        yield sys.stdout


def _say(cfg: RunConfig, text: str) -> None:
    # data goes to stdout when no output file is given, so summaries move aside
    stream = sys.stdout if cfg.output and cfg.output != "-" else sys.stderr
    print(text, file=stream)


def cmd_window(cfg: RunConfig, args) -> int:
    window = window_for(cfg.model_spec(), cfg.constants(), cfg.model)
    if window.empty:
        print(f"case {window.case_label}: no bound states")
        return EXIT_NO_STATES
    parts = [f"({fmt_energy(iv.lower)}, {fmt_energy(iv.upper)}) {iv.branch}" for iv in window.intervals]
    print(f"case {window.case_label}: " + "; ".join(parts))
    return EXIT_OK


def cmd_spectrum(cfg: RunConfig, args) -> int:
    spec, const, settings = cfg.model_spec(), cfg.constants(), cfg.settings()
    if args.sweep:
        name, values = parse_sweep(args.sweep)
        if cfg.model == "schrodinger" and name in ("Sa", "Sb", "both_equal"):
            raise ConfigError("the Schrodinger model has no scalar part to sweep")
        rows = sweep(spec, name, values, const, settings, cfg.model, cfg.branch)
    else:
        rows = sweep(spec, "Va", [spec.Va], const, settings, cfg.model, cfg.branch)
    errors = [r for r in rows if r.error and not r.error.startswith("NoBoundStates")]
    header = ["sweep_value", "n", "E", "parity_plus", "residual", "branch"]
    if errors:
        header.append("error")
    records = []
    for row in rows:
        label = fmt(row.value) if args.sweep else ""
        for s in row.states:
            rec = [label, str(s.n), fmt(s.E), s.parity_plus, fmt(s.residual), s.branch]
            records.append((row.value, s.branch, s.n, rec + ([""] if errors else [])))
        if row.error and errors:
            records.append((row.value, "", 0, [label, "", "", "", "", "", row.error]))
    records.sort(key=lambda r: r[:3])
    with _sink(cfg.output) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for rec in records:
            writer.writerow(rec[3])
    n_states = sum(len(r.states) for r in rows)
    _say(cfg, f"{n_states} bound states over {len(rows)} potential(s)")
    for r in errors:
        _say(cfg, f"error at {r.value!r}: {r.error}")
    if errors:
        return EXIT_CONVERGENCE
    if n_states == 0:
        _say(cfg, "no bound states")
        return EXIT_NO_STATES
    return EXIT_OK


def _pick_state(cfg: RunConfig, n: int, branch: str):
    spec, const = cfg.model_spec(), cfg.constants()
    try:
        states = [s for s in scan_spectrum(spec, const, cfg.settings(), cfg.model, branch, with_parity=False)
                  if s.branch == branch]
    except NoBoundStates:
        states = []
    if not 1 <= n <= len(states):
        raise CliError(f"state n={n} requested but only {len(states)} bound state(s) exist", EXIT_NO_STATES)
    return normalized_state(states[n - 1].E, spec, const, cfg.model)


def cmd_wavefunction(cfg: RunConfig, args) -> int:
    branch = "particle" if cfg.branch == "all" else cfg.branch
    state = _pick_state(cfg, args.n, branch)
    if args.x_min is None or args.x_max is None:
        half = cfg.b + 10 * state.decay_length
        x_min = -half if args.x_min is None else args.x_min
        x_max = half if args.x_max is None else args.x_max
    else:
        x_min, x_max = args.x_min, args.x_max
    if not x_max > x_min or args.samples < 2:
        raise ConfigError("need x_max > x_min and at least two samples")
    xs = np.linspace(x_min, x_max, args.samples)
    plus, minus = eval_spinor(state, xs)
    rho = density(state, xs)
    with _sink(cfg.output) as fh:
        fh.write("x,re_psi_plus,im_psi_plus,re_psi_minus,im_psi_minus,rho\n")
        for row in zip(xs, plus.real, plus.imag, minus.real, minus.imag, rho):
            fh.write(",".join(fmt(v) for v in row) + "\n")
    _say(cfg, f"n={args.n} E={fmt_energy(state.E)} samples={args.samples}")
    return EXIT_OK


def cmd_evolve(cfg: RunConfig, args) -> int:
    try:
        i, j = (int(v) for v in args.states.split(","))
    except ValueError as exc:
        raise ConfigError(f"--states expects two indices like 1,2, got {args.states!r}") from exc
    branch = "particle" if cfg.branch == "all" else cfg.branch
    lo, hi = sorted((i, j))
    packet = WavePacket(_pick_state(cfg, lo, branch), _pick_state(cfg, hi, branch))
    T = period(packet)
    half = cfg.b + 5 * max(packet.state1.decay_length, packet.state2.decay_length)
    xs = np.linspace(-half, half, args.samples)
    with _sink(cfg.output) as fh:
        fh.write("t,x,rho\n")
        for t in frame_times(packet, args.frames):
            rho = packet_density(packet, xs, t)
            for x, r in zip(xs, rho):
                fh.write(f"{fmt(t)},{fmt(x)},{fmt(r)}\n")
    _say(cfg, f"period = {fmt(T)}  (E{lo}={fmt_energy(packet.E1)}, E{hi}={fmt_energy(packet.E2)})")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    branch = "particle" if cfg.branch == "all" else cfg.branch
    checks = run_checks(cfg.model_spec(), cfg.constants(), cfg.settings(), cfg.model, branch,
                        max_states=args.max_states, energy_offset=args.inject_offset)
    print(report(checks))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--model", choices=MODELS)
    for name in ("Va", "Vb", "Sa", "Sb", "a", "b", "c"):
        common.add_argument(f"--{name}", type=float)
    common.add_argument("--coarse-points", dest="coarse_points", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("--branch", choices=BRANCHES)
    common.add_argument("-o", "--output", help="CSV destination (default: stdout)")

    parser = argparse.ArgumentParser(prog="dirac-dsp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("window", parents=[common], help="print the bound-state energy window")
    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues as CSV")
    p.add_argument("--sweep", help="field=start:stop:step (stop included)")
    p = sub.add_parser("wavefunction", parents=[common], help="spinor samples of state n as CSV")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--x-min", dest="x_min", type=float)
    p.add_argument("--x-max", dest="x_max", type=float)
    p = sub.add_parser("evolve", parents=[common], help="two-state packet density over one period")
    p.add_argument("--states", default="1,2")
    p.add_argument("--frames", type=int, default=8)
    p.add_argument("--samples", type=int, default=512)
    p = sub.add_parser("verify", parents=[common], help="run invariant and oracle checks")
    p.add_argument("--max-states", dest="max_states", type=int, default=5)
    p.add_argument("--inject-offset", dest="inject_offset", type=float, default=0.0, help=argparse.SUPPRESS)
    return parser


COMMANDS = {
    "window": cmd_window,
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "evolve": cmd_evolve,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    overrides = {k: getattr(args, k, None)
                 for k in ("model", "Va", "Vb", "Sa", "Sb", "a", "b", "c", "coarse_points", "workers",
                           "branch", "output")}
    try:
        cfg = load_config(args.config).updated(**overrides)
        return COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except NoBoundStates as exc:
        print(f"no bound states: {exc}", file=sys.stderr)
        return EXIT_NO_STATES
    except ConvergenceFailure as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except DiracDSPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY if args.command == "verify" else EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
