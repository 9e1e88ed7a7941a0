"""Exception hierarchy shared by the solver modules."""

from __future__ import annotations


class DiracDSPError(Exception):
    """Base class for all solver errors."""


class InvalidPotential(DiracDSPError, ValueError):
    """Potential parameters violate 0 <= a <= b or the height ordering."""


class DegenerateDenominator(DiracDSPError, ZeroDivisionError):
    """A spinor ratio is undefined at this energy; perturb E and retry."""


class SingularInterface(DiracDSPError, ZeroDivisionError):
    """The left-hand matching matrix of an interface is singular."""


class DegeneratePole(DegenerateDenominator):
    """A Schrodinger wave number vanishes where the closed form divides by it."""


class NoBoundStates(DiracDSPError):
    """The bound window is empty or contains no eigenvalue."""


class ConvergenceFailure(DiracDSPError, RuntimeError):
    """Root refinement did not reach the residual tolerance."""


class NotAnEigenvalue(DiracDSPError, ValueError):
    """Back-substitution left a growing component in region I."""


class ZeroNorm(DiracDSPError, ZeroDivisionError):
    pass


class AmbiguousParity(DiracDSPError):
    """Even and odd parity residuals are too close to call."""


class MismatchedPotential(DiracDSPError, ValueError):
    pass


class DegenerateSplitting(DiracDSPError, ZeroDivisionError):
    pass


class GridTooCoarse(DiracDSPError, ValueError):
    pass


class StiffnessFailure(DiracDSPError, RuntimeError):
    pass
