"""Quantum-number labels and pointwise Pauli / Dirac eigenstate evaluation.

Eigenstates are simultaneous eigenstates of energy, total angular momentum
squared and its z component, labelled (n, l, j, m) with j = l +- 1/2.  The
two-component Pauli states are

    psi_{n,l,j=l+1/2,m} = R_nl / sqrt(2l+1) * ( sqrt(l+m+1/2) Y_{l,m-1/2},
                                               -sqrt(l-m+1/2) Y_{l,m+1/2})
    psi_{n,l,j=l-1/2,m} = R_nl / sqrt(2l+1) * ( sqrt(l-m+1/2) Y_{l,m-1/2},
                                               +sqrt(l+m+1/2) Y_{l,m+1/2})

and the Dirac four-spinors share the same upper components (radial factor
g(r)) with lower components built on Y_{l+1,.} or Y_{l-1,.} and the radial
factor f(r).  For rate computations only the ratio delta(r) = -f/g is
needed; it is supplied in closed form for every n <= 2 level.

States with negative m are evaluated directly from these formulas, never
by negating their positive-m partners, so the antisymmetry of velocities
under m -> -m is a genuine cross-check.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import (
    DomainError,
    InvalidQuantumNumbers,
    PoleError,
    UnsupportedState,
)
from .params import ModelParams

__all__ = [
    "Coupling",
    "QuantumNumbers",
    "ModelParams",
    "SphericalPoint",
    "Spinor2",
    "DiracAngular",
    "validate_qn",
    "enumerate_states",
    "pauli_eval",
    "pauli_angular",
    "pauli_ab",
    "pauli_ab_dtheta",
    "dirac_angular_eval",
    "delta_ratio",
    "is_spin_eigenstate",
    "AXIS_GUARD",
    "DENSITY_FLOOR",
]

# Axis guard on sin(theta) and density underflow floor for velocity
# evaluations; velocities are undefined where the density vanishes and the
# library fails loudly instead of emitting infinities.
AXIS_GUARD = 1e-12
DENSITY_FLOOR = 1e-300


class Coupling(enum.Enum):
    """Spin-orbit coupling branch of a (l, j) pair."""

    J_PLUS = "j = l + 1/2"
    J_MINUS = "j = l - 1/2"


@dataclass(frozen=True)
class QuantumNumbers:
    """Validated (n, l, j, m) label; construct through validate_qn."""

    n: int
    l: int
    j: float
    m: float
    coupling: Coupling

    def __str__(self) -> str:
        return f"(n={self.n}, l={self.l}, j={_half(self.j)}, m={_half(self.m)})"

    def with_m(self, m: float) -> "QuantumNumbers":
        """Same level with a different magnetic quantum number."""
        return validate_qn(self.n, self.l, self.j, m)


def _half(x: float) -> str:
    two = round(2 * x)
    return f"{two}/2" if two % 2 else str(two // 2)


def _is_half_integer(x: float) -> bool:
    return abs(2.0 * x - round(2.0 * x)) < 1e-12 and round(2.0 * x) % 2 == 1


def validate_qn(n: int, l: int, j: float, m: float) -> QuantumNumbers:
    """Check the labelling rules and infer the coupling from j - l.

    Raises InvalidQuantumNumbers naming the violated rule.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidQuantumNumbers(f"n must be a positive integer, got {n!r}")
    if not isinstance(l, (int, np.integer)) or l < 0:
        raise InvalidQuantumNumbers(f"l must be a non-negative integer, got {l!r}")
    if l > n - 1:
        raise InvalidQuantumNumbers(f"l must satisfy l <= n-1; got l = {l}, n = {n}")
    if not _is_half_integer(j):
        raise InvalidQuantumNumbers(f"j must be a positive half-integer, got {j}")
    if abs(j - (l + 0.5)) < 1e-12:
        coupling = Coupling.J_PLUS
    elif abs(j - (l - 0.5)) < 1e-12 and j > 0:
        coupling = Coupling.J_MINUS
    else:
        raise InvalidQuantumNumbers(
            f"j must equal l + 1/2 or l - 1/2 (with j > 0); got j = {j}, l = {l}"
        )
    if not _is_half_integer(m):
        raise InvalidQuantumNumbers(f"m must be a half-integer, got {m}")
    if abs(m) > j + 1e-12:
        raise InvalidQuantumNumbers(f"|m| = {abs(m)} exceeds j = {j}")
    return QuantumNumbers(n=int(n), l=int(l), j=float(j), m=float(m), coupling=coupling)


def enumerate_states(n_max: int) -> list[QuantumNumbers]:
    """All distinct (n, l, j, m) labels with n <= n_max, n_max in {1, 2}.

    Ordered by (n, l, j, m) ascending; n_max = 1 yields the two ground
    labels, n_max = 2 yields all ten.
    """
    if n_max not in (1, 2):
        raise UnsupportedState(f"state enumeration implemented for n_max in {{1, 2}}, got {n_max}")
    out: list[QuantumNumbers] = []
    for n in range(1, n_max + 1):
        for l in range(0, n):
            js = [l + 0.5] if l == 0 else [l - 0.5, l + 0.5]
            for j in js:
                two_j = round(2 * j)
                for two_m in range(-two_j, two_j + 1, 2):
                    out.append(validate_qn(n, l, j, two_m / 2.0))
    return out


@dataclass(frozen=True)
class SphericalPoint:
    """Position (r, theta, phi): r > 0 Bohr radii, theta in (0, pi), phi in [0, 2 pi)."""

    r: float
    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r) and self.r > 0.0):
            raise DomainError(f"r must be positive and finite, got {self.r}")
        if not (0.0 < self.theta < math.pi):
            raise DomainError(f"theta must lie in (0, pi), got {self.theta}")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise DomainError(f"phi must lie in [0, 2 pi), got {self.phi}")

    def to_cartesian(self) -> tuple[float, float, float]:
        st = math.sin(self.theta)
        return (
            self.r * st * math.cos(self.phi),
            self.r * st * math.sin(self.phi),
            self.r * math.cos(self.theta),
        )

    @staticmethod
    def from_cartesian(x: float, y: float, z: float) -> "SphericalPoint":
        r = math.sqrt(x * x + y * y + z * z)
        if r <= 0.0:
            raise DomainError("origin has no spherical representation")
        theta = math.acos(max(-1.0, min(1.0, z / r)))
        phi = math.atan2(y, x) % (2.0 * math.pi)
        return SphericalPoint(r=r, theta=theta, phi=phi)


@dataclass(frozen=True)
class Spinor2:
    """Value of a two-component Pauli spinor at a point."""

    c1: complex
    c2: complex

    @property
    def norm_sq(self) -> float:
        return abs(self.c1) ** 2 + abs(self.c2) ** 2


@dataclass(frozen=True)
class DiracAngular:
    """Angular structure of a Dirac 4-spinor with radial factors split out.

    u1, u2 multiply g(r); u3, u4 multiply f(r) = -delta * g(r).  u3 and u4
    are purely imaginary multiples of real angular functions times their
    e^(i (m -+ 1/2) phi) phases.
    """

    u1: complex
    u2: complex
    u3: complex
    u4: complex
    delta: float

    def components(self, g: float = 1.0) -> tuple[complex, complex, complex, complex]:
        """Reconstruct (psi1, psi2, psi3, psi4) for a given g(r) value."""
        f = -self.delta * g
        return (g * self.u1, g * self.u2, f * self.u3, f * self.u4)

    @property
    def large_density(self) -> float:
        """|u1|^2 + |u2|^2 (multiplies g^2 in psi^dagger psi)."""
        return abs(self.u1) ** 2 + abs(self.u2) ** 2

    @property
    def small_density(self) -> float:
        """|u3|^2 + |u4|^2 (multiplies f^2 = delta^2 g^2)."""
        return abs(self.u3) ** 2 + abs(self.u4) ** 2


# --- Pauli eigenstates ------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _pauli_coeffs(qn: QuantumNumbers) -> tuple[float, float]:
    """Signed coefficients (c1, c2) of the two spinor components."""
    l, m = qn.l, qn.m
    if qn.coupling is Coupling.J_PLUS:
        return math.sqrt(max(l + m + 0.5, 0.0)), -math.sqrt(max(l - m + 0.5, 0.0))
    return math.sqrt(max(l - m + 0.5, 0.0)), math.sqrt(max(l + m + 0.5, 0.0))


def _require_n_le_2(qn: QuantumNumbers) -> None:
    if qn.n > 2:
        raise UnsupportedState(f"states implemented for n <= 2, got {qn}")


def pauli_angular(qn: QuantumNumbers, theta, phi) -> tuple[complex, complex]:
    """Angular spinor (v1, v2) = (c1 Y_{l,m-1/2}, c2 Y_{l,m+1/2}).

    Components whose coefficient vanishes are exactly zero (the shifted
    harmonic order would fall outside |order| <= l there).
    """
    c1, c2 = _pauli_coeffs(qn)
    m_lo = round(qn.m - 0.5)
    m_hi = round(qn.m + 0.5)
    v1 = c1 * specfun.sph_harm(qn.l, m_lo, theta, phi) if c1 != 0.0 else 0j
    v2 = c2 * specfun.sph_harm(qn.l, m_hi, theta, phi) if c2 != 0.0 else 0j
    return v1, v2


def pauli_ab(qn: QuantumNumbers, theta) -> tuple[float, float]:
    """Real angular amplitudes a, b with v1 = a e^(i(m-1/2)phi)/..., see paper shorthand.

    a = c1 N P_{l,m-1/2}(cos theta), b = c2 N P_{l,m+1/2}(cos theta) with
    N = 1/sqrt(2 pi); both vanish exactly when their coefficient does.
    """
    c1, c2 = _pauli_coeffs(qn)
    norm = 1.0 / math.sqrt(2.0 * math.pi)
    x = specfun.cos_polymorphic(theta)
    a = c1 * norm * specfun.legendre_p(qn.l, round(qn.m - 0.5), x) if c1 != 0.0 else 0.0
    b = c2 * norm * specfun.legendre_p(qn.l, round(qn.m + 0.5), x) if c2 != 0.0 else 0.0
    return a, b


def pauli_ab_dtheta(qn: QuantumNumbers, theta) -> tuple[float, float]:
    """d/dtheta of the amplitudes returned by pauli_ab."""
    c1, c2 = _pauli_coeffs(qn)
    norm = 1.0 / math.sqrt(2.0 * math.pi)
    da = c1 * norm * specfun.legendre_p_dtheta(qn.l, round(qn.m - 0.5), theta) if c1 != 0.0 else 0.0
    db = c2 * norm * specfun.legendre_p_dtheta(qn.l, round(qn.m + 0.5), theta) if c2 != 0.0 else 0.0
    return da, db


def pauli_eval(qn: QuantumNumbers, p: SphericalPoint) -> Spinor2:
    """Pauli eigenstate value R_nl(r)/sqrt(2l+1) times the angular spinor."""
    _require_n_le_2(qn)
    radial = specfun.radial_schrodinger(qn.n, qn.l, p.r) / math.sqrt(2.0 * qn.l + 1.0)
    v1, v2 = pauli_angular(qn, p.theta, p.phi)
    return Spinor2(c1=complex(radial * v1), c2=complex(radial * v2))


def is_spin_eigenstate(qn: QuantumNumbers) -> bool:
    """True when one spinor component vanishes identically (definite s_z)."""
    c1, c2 = _pauli_coeffs(qn)
    return c1 == 0.0 or c2 == 0.0


# --- Dirac eigenstates ------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _dirac_terms(qn: QuantumNumbers) -> tuple[tuple[tuple[float, int, int], ...], tuple[tuple[complex, int, int], ...]]:
    """(coefficient, degree, order) terms for the large and small components.

    Large block holds (c, l, order) for (u1, u2); small block holds the
    complex prefactors (including the -+i) for (u3, u4).
    """
    l, m = qn.l, qn.m
    m_lo = round(m - 0.5)
    m_hi = round(m + 0.5)
    if qn.coupling is Coupling.J_PLUS:
        large = (
            (math.sqrt(max(l + m + 0.5, 0.0) / (2 * l + 1)), l, m_lo),
            (-math.sqrt(max(l - m + 0.5, 0.0) / (2 * l + 1)), l, m_hi),
        )
        small = (
            (-1j * math.sqrt(max(l - m + 1.5, 0.0) / (2 * l + 3)), l + 1, m_lo),
            (-1j * math.sqrt(max(l + m + 1.5, 0.0) / (2 * l + 3)), l + 1, m_hi),
        )
    else:
        large = (
            (math.sqrt(max(l - m + 0.5, 0.0) / (2 * l + 1)), l, m_lo),
            (math.sqrt(max(l + m + 0.5, 0.0) / (2 * l + 1)), l, m_hi),
        )
        small = (
            (-1j * math.sqrt(max(l + m - 0.5, 0.0) / (2 * l - 1)), l - 1, m_lo),
            (+1j * math.sqrt(max(l - m - 0.5, 0.0) / (2 * l - 1)), l - 1, m_hi),
        )
    return large, small


def dirac_angular_eval(qn: QuantumNumbers, p: SphericalPoint, model: ModelParams) -> DiracAngular:
    """Evaluate the four angular structures and the local ratio delta(r)."""
    _require_n_le_2(qn)
    large, small = _dirac_terms(qn)
    values: list[complex] = []
    for coeff, deg, order in large + small:
        if coeff == 0.0 or coeff == 0j:
            values.append(0j)
        else:
            values.append(complex(coeff * specfun.sph_harm(deg, order, p.theta, p.phi)))
    delta = delta_ratio(qn, p.r, model)
    return DiracAngular(u1=values[0], u2=values[1], u3=values[2], u4=values[3], delta=delta)


def dirac_angular_densities(qn: QuantumNumbers, theta: float) -> tuple[float, float]:
    """(L, S) with psi^dagger psi = g^2 (L + delta^2 S).

    L = |u1|^2 + |u2|^2 and S = |u3|^2 + |u4|^2 depend only on theta; the
    phases e^(i(m -+ 1/2) phi) drop out, so this path stays in real
    arithmetic (it is the rate evaluation's hot path).
    """
    _require_n_le_2(qn)
    large, small = _dirac_terms(qn)
    x = specfun.cos_polymorphic(theta)
    out = []
    for terms in (large, small):
        total = 0.0
        for coeff, deg, order in terms:
            c2 = abs(coeff) ** 2
            if c2 != 0.0:
                p = specfun.legendre_p(deg, order, x)
                total += c2 * p * p
        out.append(total / (2.0 * math.pi))
    return out[0], out[1]


def delta_ratio(qn: QuantumNumbers, r: float, model: ModelParams) -> float:
    """delta(r) = -f(r)/g(r) for the implemented n <= 2 Dirac levels.

    1S1/2 and 2P3/2 have a single-term radial solution, so delta is the
    r-independent sqrt((1-eps)/(1+eps)).  2S1/2 and 2P1/2 carry an extra
    ratio A(rho2) of linear polynomials (rho2 = 2r/(N2 a)):

        A_2s  = ((2 g1 + 1)(N2 + 2) - (N2 + 1) rho2)
              / ((2 g1 + 1) N2      - (N2 + 1) rho2)
        A_2p  = ((2 g1 + 1) N2      - (N2 - 1) rho2)
              / ((2 g1 + 1)(N2 - 2) - (N2 - 1) rho2)

    A's pole sits at the node of g, where the ratio is undefined
    (PoleError); delta itself growing large is fine and simply drives the
    rotation rate to zero there.
    """
    if r <= 0.0:
        raise DomainError("delta_ratio requires r > 0")
    _require_n_le_2(qn)
    key = (qn.n, qn.l, round(2 * qn.j))
    if key == (1, 0, 1):
        return specfun.eps_ratio(model.alpha / model.gamma1)
    if key == (2, 1, 3):
        return specfun.eps_ratio(model.alpha / model.gamma2)
    if key not in ((2, 0, 1), (2, 1, 1)):
        raise UnsupportedState(f"delta_ratio implemented for n <= 2 levels, got {qn}")

    g1 = model.gamma1
    n2 = model.n2
    rho2 = 2.0 * r / n2
    base = specfun.eps_ratio(model.alpha / (1.0 + g1))
    if key == (2, 0, 1):
        num = (2.0 * g1 + 1.0) * (n2 + 2.0) - (n2 + 1.0) * rho2
        den = (2.0 * g1 + 1.0) * n2 - (n2 + 1.0) * rho2
    else:
        num = (2.0 * g1 + 1.0) * n2 - (n2 - 1.0) * rho2
        den = (2.0 * g1 + 1.0) * (n2 - 2.0) - (n2 - 1.0) * rho2
    if abs(den) < 1e-12:
        raise PoleError(f"radial ratio pole (node of g) at r = {r} for {qn}")
    return base * num / den
