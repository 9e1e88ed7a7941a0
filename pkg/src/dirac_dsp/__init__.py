"""Bound states of the 1D Dirac equation in double square wells, by transfer matrices."""

from .dirac import kinematics, t11_closed_form, transfer_matrix
from .dynamics import WavePacket, autocorrelation_period, packet_density, period, side_population
from .errors import *  # noqa: F401,F403
from .kernel import BACKEND
from .model import C_ATOMIC, C_REPRODUCTION, PhysicalConstants, PotentialSpec, bound_window
from .oracles import dirac_shooting_oracle, fd_oracle, shooting_root
from .schrodinger import schrodinger_spectrum, schrodinger_t11
from .spectrum import BoundState, ScanSettings, scan_spectrum, sweep
from .states import classify_parity, count_nodes, density, eval_spinor, normalize, normalized_state, solve_coefficients

__all__ = [
    "BACKEND",
    "BoundState",
    "C_ATOMIC",
    "C_REPRODUCTION",
    "PhysicalConstants",
    "PotentialSpec",
    "ScanSettings",
    "WavePacket",
    "autocorrelation_period",
    "bound_window",
    "classify_parity",
    "count_nodes",
    "density",
    "dirac_shooting_oracle",
    "eval_spinor",
    "fd_oracle",
    "kinematics",
    "normalize",
    "normalized_state",
    "packet_density",
    "period",
    "scan_spectrum",
    "schrodinger_spectrum",
    "schrodinger_t11",
    "shooting_root",
    "side_population",
    "solve_coefficients",
    "sweep",
    "t11_closed_form",
    "transfer_matrix",
]
