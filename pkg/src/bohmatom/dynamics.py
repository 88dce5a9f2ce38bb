"""Spin vectors, Bohmian velocity fields and angular rotation rates.

For every (n, l, j, m) eigenstate the velocity is purely azimuthal, so the
motion is a circle of constant z at angular velocity dphi/dt = v / (r sin
theta).  Pauli rates come in two independent forms: assembled from the two
current contributions

    v_a = (1/(r sin theta)) (m + (|v2|^2 - |v1|^2) / (2 (|v1|^2 + |v2|^2)))
    v_b = (s_theta + r ds_theta/dr - ds_r/dtheta) / (2 r s)

and as the tabulated closed forms for the five n <= 2 levels.  Dirac rates
use the azimuthal current 2 c f g x (angular factor) divided by the density
g^2 (L + delta^2 S); the unknown n = 2 radial factor g^2 cancels, leaving
only the closed-form ratio delta(r) = -f/g.  All rates are radians per
atomic time unit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Literal

from . import specfun, states
from .errors import (
    AxisSingularity,
    DomainError,
    NodeSingularity,
    UnsupportedState,
)
from .params import ModelParams
from .states import (
    AXIS_GUARD,
    DENSITY_FLOOR,
    Coupling,
    QuantumNumbers,
    SphericalPoint,
    Spinor2,
)

__all__ = [
    "Frame",
    "FrameVector",
    "SpinVector",
    "RateSource",
    "RateReport",
    "spin_vector",
    "pauli_velocity_a",
    "pauli_velocity_b",
    "pauli_velocity",
    "pauli_rate_assembled",
    "pauli_rate_closed_form",
    "angular_factor",
    "dirac_current",
    "dirac_density",
    "dirac_rate",
    "dirac_rate_nonrel_limit",
    "rate",
]


class Frame(enum.Enum):
    CARTESIAN = "cartesian"
    LOCAL_SPHERICAL = "local spherical (e_r, e_theta, e_phi)"


def _basis(at: SphericalPoint) -> tuple[tuple[float, float, float], ...]:
    st, ct = math.sin(at.theta), math.cos(at.theta)
    sp, cp = math.sin(at.phi), math.cos(at.phi)
    e_r = (st * cp, st * sp, ct)
    e_t = (ct * cp, ct * sp, -st)
    e_p = (-sp, cp, 0.0)
    return e_r, e_t, e_p


@dataclass(frozen=True)
class FrameVector:
    """3-vector tagged with the basis its components refer to."""

    components: tuple[float, float, float]
    frame: Frame

    @property
    def norm(self) -> float:
        return math.sqrt(sum(c * c for c in self.components))

    def to_cartesian(self, at: SphericalPoint) -> "FrameVector":
        if self.frame is Frame.CARTESIAN:
            return self
        e_r, e_t, e_p = _basis(at)
        vr, vt, vp = self.components
        cart = tuple(vr * e_r[i] + vt * e_t[i] + vp * e_p[i] for i in range(3))
        return FrameVector(components=cart, frame=Frame.CARTESIAN)

    def to_local(self, at: SphericalPoint) -> "FrameVector":
        if self.frame is Frame.LOCAL_SPHERICAL:
            return self
        e_r, e_t, e_p = _basis(at)
        v = self.components
        loc = tuple(sum(v[i] * e[i] for i in range(3)) for e in (e_r, e_t, e_p))
        return FrameVector(components=loc, frame=Frame.LOCAL_SPHERICAL)


@dataclass(frozen=True)
class SpinVector:
    """Local spin vector w = psi^dagger sigma psi and its polar split.

    w lies in the plane of the position vector and the z axis, so its
    azimuthal component vanishes; r_s equals psi^dagger psi (two-spinor
    identity |psi^dagger sigma psi| = psi^dagger psi).
    """

    w: FrameVector
    r_s: float
    s_r: float
    s_theta: float


class RateSource(enum.Enum):
    PAULI_ASSEMBLED = "pauli-assembled"
    PAULI_CLOSED_FORM = "pauli-closed-form"
    DIRAC_EXACT = "dirac-exact"
    DIRAC_NONREL_LIMIT = "dirac-nonrel-limit"


@dataclass(frozen=True)
class RateReport:
    """dphi/dt at a point, tagged with how it was computed."""

    qn: QuantumNumbers
    point: SphericalPoint
    rate: float
    source: RateSource

    def __post_init__(self) -> None:
        if not math.isfinite(self.rate):
            raise DomainError(f"non-finite rate for {self.qn} at {self.point}")


# --- spin vector -------------------------------------------------------------


def spin_vector(s2: Spinor2, at: SphericalPoint, qn: QuantumNumbers) -> SpinVector:
    """Spin vector of the spinor value s2 (evaluated at `at` for state qn).

    The Cartesian components are (2 Re c1* c2, 2 Im c1* c2, |c1|^2 - |c2|^2);
    s_r and s_theta are branch-free projections onto the local basis, which
    honor both sign branches of the polar-angle decomposition at once.
    """
    cross = s2.c1.conjugate() * s2.c2
    w_cart = (2.0 * cross.real, 2.0 * cross.imag, abs(s2.c1) ** 2 - abs(s2.c2) ** 2)
    w = FrameVector(components=w_cart, frame=Frame.CARTESIAN)
    local = w.to_local(at)
    return SpinVector(w=w, r_s=s2.norm_sq, s_r=local.components[0], s_theta=local.components[1])


# --- Pauli velocities --------------------------------------------------------


def _pauli_guards(qn: QuantumNumbers, p: SphericalPoint) -> tuple[float, float, float]:
    """Common guards; returns (a, b, sin theta) for the state's amplitudes."""
    st = math.sin(p.theta)
    if st <= AXIS_GUARD:
        raise AxisSingularity(f"sin(theta) = {st} below the axis guard at {p}")
    a, b = states.pauli_ab(qn, p.theta)
    radial = specfun.radial_schrodinger(qn.n, qn.l, p.r)
    density = float(radial * radial) * (a * a + b * b) / (2.0 * qn.l + 1.0)
    if density <= DENSITY_FLOOR:
        raise NodeSingularity(f"density underflow for {qn} at {p}")
    return a, b, st


def pauli_velocity_a(qn: QuantumNumbers, p: SphericalPoint) -> FrameVector:
    """Convective (Schroedinger-current) velocity contribution, azimuthal."""
    a, b, st = _pauli_guards(qn, p)
    bracket = qn.m + 0.5 * (b * b - a * a) / (a * a + b * b)
    return FrameVector((0.0, 0.0, bracket / (p.r * st)), Frame.LOCAL_SPHERICAL)


def pauli_velocity_b(
    qn: QuantumNumbers,
    p: SphericalPoint,
    derivatives: Literal["analytic", "fd"] = "analytic",
    fd_step: float = 1e-5,
) -> FrameVector:
    """Spin-curl velocity contribution (1/(2 r s))(s_theta + r ds_theta/dr
    - ds_r/dtheta), azimuthal.

    The analytic path differentiates the closed-form trig-polynomial
    amplitudes; the finite-difference path exists as a cross-check behind
    the same interface.
    """
    a, b, st = _pauli_guards(qn, p)
    ct = math.cos(p.theta)
    if derivatives == "fd":
        return _pauli_velocity_b_fd(qn, p, fd_step)
    s_sq = a * a + b * b
    if s_sq <= DENSITY_FLOOR:
        raise NodeSingularity(f"spin magnitude underflow for {qn} at {p}")
    da, db = states.pauli_ab_dtheta(qn, p.theta)
    a2, b2 = a * a - b * b, 2.0 * a * b
    d_a2 = 2.0 * (a * da - b * db)
    d_b2 = 2.0 * (da * b + a * db)
    logderiv = specfun.radial_logderiv(qn.n, qn.l, p.r)
    bracket = (
        2.0 * logderiv * p.r * (-st * a2 + ct * b2) - (ct * d_a2 + st * d_b2)
    )
    return FrameVector((0.0, 0.0, bracket / (2.0 * p.r * s_sq)), Frame.LOCAL_SPHERICAL)


def _spin_polar_field(qn: QuantumNumbers, r: float, theta: float) -> tuple[float, float, float]:
    """(s_r, s_theta, s) of the full spin field at (r, theta)."""
    a, b = states.pauli_ab(qn, theta)
    radial = float(specfun.radial_schrodinger(qn.n, qn.l, r))
    q = radial * radial / (2.0 * qn.l + 1.0)
    st, ct = math.sin(theta), math.cos(theta)
    a2, b2 = a * a - b * b, 2.0 * a * b
    return q * (ct * a2 + st * b2), q * (-st * a2 + ct * b2), q * (a * a + b * b)


def _pauli_velocity_b_fd(qn: QuantumNumbers, p: SphericalPoint, h: float) -> FrameVector:
    s_r, s_t, s_mag = _spin_polar_field(qn, p.r, p.theta)
    if s_mag <= DENSITY_FLOOR:
        raise NodeSingularity(f"spin magnitude underflow for {qn} at {p}")
    ds_t_dr = (
        _spin_polar_field(qn, p.r + h, p.theta)[1]
        - _spin_polar_field(qn, p.r - h, p.theta)[1]
    ) / (2.0 * h)
    ds_r_dt = (
        _spin_polar_field(qn, p.r, p.theta + h)[0]
        - _spin_polar_field(qn, p.r, p.theta - h)[0]
    ) / (2.0 * h)
    v = (s_t + p.r * ds_t_dr - ds_r_dt) / (2.0 * p.r * s_mag)
    return FrameVector((0.0, 0.0, v), Frame.LOCAL_SPHERICAL)


def pauli_velocity(qn: QuantumNumbers, p: SphericalPoint) -> FrameVector:
    """Total Bohmian velocity v_a + v_b (purely azimuthal).

    Fused evaluation: the amplitudes and guards shared by the two
    contributions are computed once (this is the trajectory hot path).
    """
    a, b, st = _pauli_guards(qn, p)
    ct = math.cos(p.theta)
    s_sq = a * a + b * b
    v_a = (qn.m + 0.5 * (b * b - a * a) / s_sq) / (p.r * st)
    da, db = states.pauli_ab_dtheta(qn, p.theta)
    a2, b2 = a * a - b * b, 2.0 * a * b
    d_a2 = 2.0 * (a * da - b * db)
    d_b2 = 2.0 * (da * b + a * db)
    logderiv = specfun.radial_logderiv(qn.n, qn.l, p.r)
    bracket = 2.0 * logderiv * p.r * (-st * a2 + ct * b2) - (ct * d_a2 + st * d_b2)
    v_b = bracket / (2.0 * p.r * s_sq)
    return FrameVector((0.0, 0.0, v_a + v_b), Frame.LOCAL_SPHERICAL)


def pauli_rate_assembled(qn: QuantumNumbers, p: SphericalPoint) -> RateReport:
    """dphi/dt = (v_a + v_b) / (r sin theta) from the current itself."""
    v = pauli_velocity(qn, p).components[2]
    return RateReport(qn, p, v / (p.r * math.sin(p.theta)), RateSource.PAULI_ASSEMBLED)


def pauli_rate_closed_form(qn: QuantumNumbers, p: SphericalPoint) -> RateReport:
    """Tabulated rotation rate of the five n <= 2 levels, evaluated literally.

    Rates are for the +|m| member; the -|m| member carries the opposite
    sign.  The 2s row has a pole at its radial node r = 2a.
    """
    if qn.n > 2:
        raise UnsupportedState(f"closed-form rates cover n <= 2 only, got {qn}")
    sign = 1.0 if qn.m > 0 else -1.0
    r = p.r
    key = (qn.n, qn.l, round(2 * qn.j))
    if key == (1, 0, 1):
        value = 1.0 / r
    elif key == (2, 0, 1):
        u = 1.0 - 0.5 * r
        if abs(u) < 1e-14:
            raise NodeSingularity("2s closed-form rate has a pole at r = 2a")
        value = (1.0 / u + 1.0) / (2.0 * r)
    elif key == (2, 1, 3) and abs(qn.m) == 1.5:
        value = 1.0 / (2.0 * r)
    elif key == (2, 1, 1):
        value = (3.0 - 0.5 * r) / (r * r)
    elif key == (2, 1, 3):
        ct, st = math.cos(p.theta), math.sin(p.theta)
        value = (8.0 * ct * ct - st * st) / (4.0 * ct * ct + st * st) / (2.0 * r)
    else:  # pragma: no cover - enumeration is exhaustive for n <= 2
        raise UnsupportedState(f"no closed-form rate for {qn}")
    return RateReport(qn, p, sign * value, RateSource.PAULI_CLOSED_FORM)


# --- Dirac current and rates -------------------------------------------------


def angular_factor(qn: QuantumNumbers, theta: float) -> float:
    """Angular factor of the Dirac azimuthal current (F for j = l + 1/2,
    G for j = l - 1/2), including the harmonics' 1/(2 pi) normalization.

    Built from products of the component coefficients with Legendre
    functions of the large (degree l) and small (degree l -+ 1) blocks;
    products whose coefficient vanishes are skipped, which is exactly where
    the shifted order would be invalid.  Flips sign under m -> -m.
    """
    if qn.n > 2:
        raise UnsupportedState(f"angular factor implemented for n <= 2, got {qn}")
    large, small = states._dirac_terms(qn)
    x = math.cos(theta)
    (cl1, dl, o_lo), (cl2, _, o_hi) = large
    (cs1, ds, _), (cs2, _, _) = small
    total = 0.0
    c14 = abs(cl1) * abs(cs2)
    if c14 != 0.0:
        total += c14 * float(specfun.legendre_p(dl, o_lo, x)) * float(
            specfun.legendre_p(ds, o_hi, x)
        )
    c23 = abs(cl2) * abs(cs1)
    if c23 != 0.0:
        total += c23 * float(specfun.legendre_p(dl, o_hi, x)) * float(
            specfun.legendre_p(ds, o_lo, x)
        )
    return total / (2.0 * math.pi)


def _coupling_sign(qn: QuantumNumbers) -> float:
    return 1.0 if qn.coupling is Coupling.J_PLUS else -1.0


def dirac_current(qn: QuantumNumbers, p: SphericalPoint, model: ModelParams) -> FrameVector:
    """Cartesian Dirac current c psi^dagger alpha psi at p.

    j_z vanishes identically (the motion is confined to planes of constant
    z); j_x and j_y are proportional to sin phi and -cos phi times the
    angular factor.  For n = 1 the overall g(r)^2 scale is included; for
    n = 2 the returned current is relative (g^2 factored out), which is
    the scale every rate and divergence check needs.
    """
    factor = angular_factor(qn, p.theta)
    delta = states.delta_ratio(qn, p.r, model)
    scale = _g_squared(qn, p.r, model)
    # f g = -delta g^2, so the prefactor of (sin phi, -cos phi, 0) is
    # sign * 2 c * (-delta) * factor * g^2.
    amp = _coupling_sign(qn) * 2.0 * model.c * (-delta) * factor * scale
    return FrameVector(
        (amp * math.sin(p.phi), -amp * math.cos(p.phi), 0.0), Frame.CARTESIAN
    )


def _g_squared(qn: QuantumNumbers, r: float, model: ModelParams) -> float:
    if qn.n == 1:
        g, _ = specfun.dirac_radial_ground(r, model)
        return float(g) * float(g)
    return 1.0


def dirac_density(qn: QuantumNumbers, p: SphericalPoint, model: ModelParams) -> float:
    """psi^dagger psi = g^2 (L + delta^2 S), on the same scale as dirac_current."""
    big, small = states.dirac_angular_densities(qn, p.theta)
    delta = states.delta_ratio(qn, p.r, model)
    return (big + delta * delta * small) * _g_squared(qn, p.r, model)


def dirac_rate(qn: QuantumNumbers, p: SphericalPoint, model: ModelParams) -> RateReport:
    """Exact Dirac rotation rate at finite alpha.

    Implemented in the phi-free form (the printed current's cos phi cancels
    against y_dot = r sin theta cos phi phi_dot):

        dphi/dt = sign * 2 c delta(r) Phi(theta)
                  / (r sin theta (L(theta) + delta^2 S(theta)))

    keeping the full delta^2 term in the density.  The g^2 factor cancels
    between f g and psi^dagger psi, so no n = 2 radial functions are needed.
    """
    st = math.sin(p.theta)
    if st <= AXIS_GUARD:
        raise AxisSingularity(f"sin(theta) = {st} below the axis guard at {p}")
    big, small = states.dirac_angular_densities(qn, p.theta)
    delta = states.delta_ratio(qn, p.r, model)
    density = big + delta * delta * small
    if density <= DENSITY_FLOOR:
        raise NodeSingularity(f"relative density underflow for {qn} at {p}")
    factor = angular_factor(qn, p.theta)
    value = (
        _coupling_sign(qn) * 2.0 * model.c * delta * factor / (p.r * st * density)
    )
    return RateReport(qn, p, value, RateSource.DIRAC_EXACT)


def dirac_rate_nonrel_limit(qn: QuantumNumbers, p: SphericalPoint) -> RateReport:
    """alpha -> 0 closed form of the Dirac rotation rate.

    These coincide with the tabulated Pauli rates row by row, signed for
    the actual m member (each formula is the genuine alpha -> 0 limit of
    dirac_rate for that m, verified by the convergence suite).
    """
    report = pauli_rate_closed_form(qn, p)
    return RateReport(qn, p, report.rate, RateSource.DIRAC_NONREL_LIMIT)


def rate(
    qn: QuantumNumbers,
    p: SphericalPoint,
    model: ModelParams | None = None,
    source: RateSource = RateSource.PAULI_ASSEMBLED,
) -> RateReport:
    """Rotation rate at p from the selected computation path."""
    if source is RateSource.PAULI_ASSEMBLED:
        return pauli_rate_assembled(qn, p)
    if source is RateSource.PAULI_CLOSED_FORM:
        return pauli_rate_closed_form(qn, p)
    if source is RateSource.DIRAC_EXACT:
        return dirac_rate(qn, p, model if model is not None else ModelParams())
    return dirac_rate_nonrel_limit(qn, p)
