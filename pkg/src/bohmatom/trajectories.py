"""Time integration of Bohm trajectories and circularity diagnostics.

The velocity field of every eigenstate is azimuthal with a magnitude that
is constant along its own streamline, so exact orbits are circles of
constant z traversed at constant angular velocity.  Integration runs in
Cartesian coordinates (v = omega(r, theta) * (-y, x, 0)), which avoids the
phi coordinate singularity near the axis; positions are converted back to
spherical for storage.  Fixed-step classic Runge-Kutta keeps the sampled
numbers reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import dynamics
from .dynamics import Frame, FrameVector, RateSource
from .errors import (
    BohmAtomError,
    DomainError,
    SingularityEncountered,
    StepSizeTooCoarse,
    ZeroRate,
)
from .params import ModelParams
from .states import QuantumNumbers, SphericalPoint

__all__ = [
    "TrajectorySample",
    "Trajectory",
    "CircularityReport",
    "integrate",
    "circularity_report",
    "period",
]

# Post-integration relative drift above which the step count was too coarse.
DRIFT_LIMIT = 1e-3
MIN_STEPS_PER_REV = 16


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    position: SphericalPoint
    velocity: FrameVector  # Cartesian


@dataclass(frozen=True)
class Trajectory:
    samples: list[TrajectorySample]
    qn: QuantumNumbers
    model: ModelParams
    integrator_meta: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CircularityReport:
    """Drift and rate statistics certifying circular constant-rate motion.

    Drifts are relative to the initial orbit radius; rate statistics come
    from finite differences of the unwrapped phi(t); phi_fit_residual is
    the maximum deviation from the best affine fit, relative to the total
    phase advance.
    """

    max_z_drift: float
    max_radius_drift: float
    rate_mean: float
    rate_stddev: float
    period_estimate: float
    phi_fit_residual: float


def _velocity(
    qn: QuantumNumbers,
    model: ModelParams,
    source: RateSource,
    x: float,
    y: float,
    z: float,
) -> tuple[float, float, float]:
    p = SphericalPoint.from_cartesian(x, y, z)
    omega = dynamics.rate(qn, p, model, source).rate
    return (-omega * y, omega * x, 0.0)


def integrate(
    qn: QuantumNumbers,
    model: ModelParams,
    start: SphericalPoint,
    duration: float,
    steps: int,
    source: RateSource = RateSource.PAULI_ASSEMBLED,
) -> Trajectory:
    """Classic fixed-step RK4 of x_dot = j/rho from `start` over `duration`.

    Requires at least 16 steps per estimated revolution (estimated from
    the rate at the start point); raises SingularityEncountered if any
    substep enters a guard zone and StepSizeTooCoarse if the integrated
    circle drifts by more than 1e-3 relative.
    """
    if steps < 1:
        raise DomainError(f"steps must be positive, got {steps}")
    if duration <= 0.0:
        raise DomainError(f"duration must be positive, got {duration}")
    omega0 = dynamics.rate(qn, start, model, source).rate
    revs_est = abs(omega0) * duration / (2.0 * math.pi)
    if revs_est > 0.0 and steps / revs_est < MIN_STEPS_PER_REV:
        raise StepSizeTooCoarse(
            f"{steps} steps cover ~{revs_est:.3g} revolutions; need at least "
            f"{MIN_STEPS_PER_REV} steps per revolution"
        )

    h = duration / steps
    x, y, z = start.to_cartesian()

    def f(px: float, py: float, pz: float) -> tuple[float, float, float]:
        try:
            return _velocity(qn, model, source, px, py, pz)
        except (BohmAtomError,) as exc:
            raise SingularityEncountered(
                f"substep entered a guard zone near ({px:.6g}, {py:.6g}, {pz:.6g}): {exc}"
            ) from exc

    samples: list[TrajectorySample] = []
    v_here = f(x, y, z)
    samples.append(
        TrajectorySample(0.0, start, FrameVector(v_here, Frame.CARTESIAN))
    )
    for k in range(1, steps + 1):
        k1 = v_here
        k2 = f(x + 0.5 * h * k1[0], y + 0.5 * h * k1[1], z + 0.5 * h * k1[2])
        k3 = f(x + 0.5 * h * k2[0], y + 0.5 * h * k2[1], z + 0.5 * h * k2[2])
        k4 = f(x + h * k3[0], y + h * k3[1], z + h * k3[2])
        x += h * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) / 6.0
        y += h * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) / 6.0
        z += h * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]) / 6.0
        v_here = f(x, y, z)
        try:
            pos = SphericalPoint.from_cartesian(x, y, z)
        except DomainError as exc:
            raise SingularityEncountered(str(exc)) from exc
        samples.append(
            TrajectorySample(k * h, pos, FrameVector(v_here, Frame.CARTESIAN))
        )

    traj = Trajectory(
        samples=samples,
        qn=qn,
        model=model,
        integrator_meta={"method": "rk4", "step": h, "steps": steps, "source": source.value},
    )
    report = circularity_report(traj)
    if report.max_radius_drift > DRIFT_LIMIT:
        raise StepSizeTooCoarse(
            f"radius drifted by {report.max_radius_drift:.3g} relative "
            f"(> {DRIFT_LIMIT}); increase steps"
        )
    return traj


def circularity_report(traj: Trajectory) -> CircularityReport:
    """Drift metrics and phi(t) statistics over an integrated trajectory."""
    if len(traj.samples) < 3:
        raise DomainError("circularity report needs at least 3 samples")
    t = np.array([s.t for s in traj.samples])
    r_cyl = np.array(
        [s.position.r * math.sin(s.position.theta) for s in traj.samples]
    )
    z = np.array([s.position.r * math.cos(s.position.theta) for s in traj.samples])
    phi = np.unwrap(np.array([s.position.phi for s in traj.samples]))

    scale = math.hypot(r_cyl[0], z[0])
    max_radius_drift = float(np.max(np.abs(r_cyl - r_cyl[0])) / r_cyl[0])
    max_z_drift = float(np.max(np.abs(z - z[0])) / scale)

    rates = np.diff(phi) / np.diff(t)
    rate_mean = float(np.mean(rates))
    rate_stddev = float(np.std(rates))
    period_estimate = 2.0 * math.pi / abs(rate_mean) if rate_mean != 0.0 else math.inf

    slope, intercept = np.polyfit(t, phi, 1)
    advance = abs(phi[-1] - phi[0])
    residual = float(np.max(np.abs(phi - (slope * t + intercept))))
    phi_fit_residual = residual / max(advance, 1e-30)

    return CircularityReport(
        max_z_drift=max_z_drift,
        max_radius_drift=max_radius_drift,
        rate_mean=rate_mean,
        rate_stddev=rate_stddev,
        period_estimate=period_estimate,
        phi_fit_residual=phi_fit_residual,
    )


def period(
    qn: QuantumNumbers,
    p: SphericalPoint,
    source: RateSource,
    model: ModelParams | None = None,
) -> float:
    """Orbital period 2 pi / |dphi/dt| at p; the rotation sense is the
    sign of the rate itself.

    Raises ZeroRate where the rate vanishes (for example on the cones
    8 cos^2 theta = sin^2 theta of the (2, 1, 3/2, +-1/2) states, whose
    points are fixed points of the flow).
    """
    omega = dynamics.rate(qn, p, model, source).rate
    if abs(omega) < 1e-12 / p.r:
        raise ZeroRate(f"rotation rate vanishes for {qn} at {p}")
    return 2.0 * math.pi / abs(omega)
