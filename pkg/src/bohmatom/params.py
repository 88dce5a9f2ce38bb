"""Unit system and fine-structure parameters.

Everything runs in atomic units: hbar = m_e = e = 1, a (Bohr radius) = 1,
c = 1/alpha.  alpha is the single relativistic knob; sweeping it toward 0
realizes the nonrelativistic reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# CODATA 2018 fine-structure constant.
ALPHA_FS = 7.2973525693e-3

# Atomic unit of time in seconds (hbar / E_h), for the CLI's SI conversion.
ATOMIC_TIME_SI = 2.4188843265857e-17


@dataclass(frozen=True)
class ModelParams:
    """Fine-structure constant and the quantities derived from it.

    gamma1, gamma2 are the Dirac exponents sqrt(1 - alpha^2) and
    sqrt(4 - alpha^2); eps1, eps2, eps3 are the scaled bound-state energies
    E/(m c^2) of the 1S1/2, (2S1/2, 2P1/2) and 2P3/2 levels.
    """

    alpha: float = ALPHA_FS

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha < 1.0):
            raise DomainError(
                f"alpha must lie in (0, 1) so that sqrt(1 - alpha^2) is real; "
                f"got {self.alpha}"
            )

    @property
    def c(self) -> float:
        """Speed of light, 1/alpha in atomic units."""
        return 1.0 / self.alpha

    @property
    def a(self) -> float:
        """Bohr radius, the length unit."""
        return 1.0

    @property
    def gamma1(self) -> float:
        return math.sqrt(1.0 - self.alpha**2)

    @property
    def gamma2(self) -> float:
        return math.sqrt(4.0 - self.alpha**2)

    @property
    def eps1(self) -> float:
        return (1.0 + (self.alpha / self.gamma1) ** 2) ** -0.5

    @property
    def eps2(self) -> float:
        return (1.0 + (self.alpha / (1.0 + self.gamma1)) ** 2) ** -0.5

    @property
    def eps3(self) -> float:
        return (1.0 + (self.alpha / self.gamma2) ** 2) ** -0.5

    @property
    def n2(self) -> float:
        """Apparent principal quantum number sqrt(2 (1 + gamma1)) of n = 2."""
        return math.sqrt(2.0 * (1.0 + self.gamma1))

    def halved(self, k: int = 1) -> "ModelParams":
        """A copy with alpha divided by 2**k (for limit-sweep ladders)."""
        return ModelParams(alpha=self.alpha / 2.0**k)
