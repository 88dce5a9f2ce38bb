"""Exception hierarchy.

Every failure mode raises a named exception rather than returning NaN or
inf: velocities and rates are undefined on nodal surfaces and on the polar
axis, and silent infinities propagate into trajectories unnoticed.
"""


class BohmAtomError(Exception):
    """Base class for all library errors."""


class DomainError(BohmAtomError):
    """Numeric argument outside the mathematical domain (e.g. |x| > 1)."""


class InvalidQuantumNumbers(BohmAtomError):
    """(n, l, j, m) violates an eigenstate labelling rule."""


class UnsupportedState(BohmAtomError):
    """Label is valid but outside the implemented n <= 2 scope."""


class SingularityError(BohmAtomError):
    """Base for point-singularity failures of field evaluations."""


class AxisSingularity(SingularityError):
    """Evaluation point too close to the polar axis (sin(theta) ~ 0)."""


class NodeSingularity(SingularityError):
    """Density vanishes at the point; velocity undefined."""


class PoleError(SingularityError):
    """Small/large radial ratio has a pole (node of g) at this radius."""


class GuardZone(BohmAtomError):
    """Finite-difference stencil would cross a singular guard region."""


class NotASpinEigenstate(BohmAtomError):
    """Reduced guidance law requested for a two-component spinor state."""


class ZeroRate(BohmAtomError):
    """Angular velocity vanishes at the point; period undefined."""


class SingularityEncountered(BohmAtomError):
    """Trajectory integration stepped into a guard zone."""


class StepSizeTooCoarse(BohmAtomError):
    """Integration drift exceeds tolerance; more steps per revolution needed."""


class DegenerateFit(BohmAtomError):
    """Limit-convergence differences underflow; no slope can be fitted."""


class ProjectionError(BohmAtomError):
    """Data is not planar (or empty) and cannot be drawn as a 2D figure."""
