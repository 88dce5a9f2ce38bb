"""Independent numerical oracles and the cross-check suite.

Nothing here reuses the analytic velocity formulas it is checking: currents
come from central finite differences of the eigenstate values, the Dirac
current additionally from a direct 4x4 alpha-matrix contraction,
normalizations from product quadrature, and limit behaviour from log-log
regression over a fine-structure-constant ladder.  A fixed RNG seed makes
every report bit-reproducible.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np
from scipy import integrate as _quad

from . import dynamics, specfun, states, trajectories
from .dynamics import Frame, FrameVector, RateSource
from .errors import (
    DegenerateFit,
    DomainError,
    GuardZone,
    NotASpinEigenstate,
    UnsupportedState,
    ZeroRate,
)
from .params import ALPHA_FS, ModelParams
from .states import QuantumNumbers, SphericalPoint

__all__ = [
    "OracleConfig",
    "CheckResult",
    "sample_points",
    "oracle_pauli_current",
    "oracle_spin_reduction",
    "oracle_guidance_terms",
    "oracle_dirac_current",
    "check_divergence",
    "check_normalization",
    "limit_convergence",
    "pauli_current_cartesian",
    "run_all",
]

_DEFAULT_LADDER = (ALPHA_FS, ALPHA_FS / 2.0, ALPHA_FS / 4.0, ALPHA_FS / 8.0)


@dataclass(frozen=True)
class OracleConfig:
    """Step sizes, quadrature resolution, alpha ladder and RNG seed."""

    fd_step: float = 1e-5
    n_theta: int = 64
    n_phi: int = 128
    r_max: float = 50.0
    alpha_ladder: tuple[float, ...] = _DEFAULT_LADDER
    seed: int = 42

    def __post_init__(self) -> None:
        if self.fd_step <= 0.0:
            raise DomainError("fd_step must be positive")
        if any(b >= a for a, b in zip(self.alpha_ladder, self.alpha_ladder[1:])):
            raise DomainError("alpha ladder must be strictly decreasing")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


@dataclass(frozen=True)
class CheckResult:
    """One pass/fail line of the verification report."""

    name: str
    passed: bool
    measured: float
    allowed: float
    detail: str = ""


# --- seeded sample points ----------------------------------------------------

_R_RANGE = (0.3, 8.0)
_THETA_RANGE = (0.2, math.pi - 0.2)
_CONE = math.atan(math.sqrt(8.0))  # rate-zero cone of the (2,1,3/2,+-1/2) states


def _excluded(qn: QuantumNumbers, r: float, theta: float) -> bool:
    """Nodes and rate zeros where ratio comparisons lose their denominator."""
    key = (qn.n, qn.l, round(2 * qn.j))
    if key == (2, 0, 1) and (abs(r - 2.0) < 0.3 or abs(r - 4.0) < 0.3):
        return True
    if key == (2, 1, 1) and abs(r - 6.0) < 0.5:
        return True
    if key == (2, 1, 3) and abs(qn.m) == 0.5:
        if abs(theta - _CONE) < 0.15 or abs(theta - (math.pi - _CONE)) < 0.15:
            return True
    return False


def sample_points(
    qn: QuantumNumbers, count: int, rng: np.random.Generator
) -> list[SphericalPoint]:
    """Random evaluation points avoiding the state's nodes and rate zeros."""
    pts: list[SphericalPoint] = []
    while len(pts) < count:
        r = rng.uniform(*_R_RANGE)
        theta = rng.uniform(*_THETA_RANGE)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        if not _excluded(qn, r, theta):
            pts.append(SphericalPoint(r=r, theta=theta, phi=phi))
    return pts


# --- finite-difference Pauli current -----------------------------------------


def _pauli_spinor_xyz(qn: QuantumNumbers, x: float, y: float, z: float) -> np.ndarray:
    p = SphericalPoint.from_cartesian(x, y, z)
    s = states.pauli_eval(qn, p)
    return np.array([s.c1, s.c2])


def _spin_cartesian(spinor: np.ndarray) -> np.ndarray:
    c1, c2 = spinor
    cross = np.conjugate(c1) * c2
    return np.array([2.0 * cross.real, 2.0 * cross.imag, abs(c1) ** 2 - abs(c2) ** 2])


def _guard_fd(qn: QuantumNumbers, p: SphericalPoint, h: float) -> None:
    if p.r * math.sin(p.theta) < 10.0 * h or p.r < 10.0 * h:
        raise GuardZone(f"stencil of step {h} too close to the axis at {p}")
    if (qn.n, qn.l) == (2, 0) and abs(p.r - 2.0) < 0.2:
        raise GuardZone(f"stencil of step {h} inside the 2s node window at {p}")


def oracle_pauli_current(
    qn: QuantumNumbers, p: SphericalPoint, cfg: OracleConfig
) -> FrameVector:
    """Pauli current j = Im(psi^dagger grad psi) + (1/2) curl(psi^dagger
    sigma psi), entirely by central differences of the eigenstate values.
    """
    h = cfg.fd_step
    _guard_fd(qn, p, h)
    x0 = np.array(p.to_cartesian())
    psi0 = _pauli_spinor_xyz(qn, *x0)

    plus = []
    minus = []
    for axis in range(3):
        step = np.zeros(3)
        step[axis] = h
        plus.append(_pauli_spinor_xyz(qn, *(x0 + step)))
        minus.append(_pauli_spinor_xyz(qn, *(x0 - step)))

    j_conv = np.array(
        [
            float(np.sum(np.conjugate(psi0) * (plus[i] - minus[i])).imag) / (2.0 * h)
            for i in range(3)
        ]
    )

    s_plus = [_spin_cartesian(plus[i]) for i in range(3)]
    s_minus = [_spin_cartesian(minus[i]) for i in range(3)]
    ds = [(s_plus[i] - s_minus[i]) / (2.0 * h) for i in range(3)]  # ds[i][k] = d s_k / d x_i
    curl = np.array(
        [
            ds[1][2] - ds[2][1],
            ds[2][0] - ds[0][2],
            ds[0][1] - ds[1][0],
        ]
    )
    j = j_conv + 0.5 * curl
    return FrameVector(tuple(float(c) for c in j), Frame.CARTESIAN)


def pauli_current_cartesian(qn: QuantumNumbers, p: SphericalPoint) -> FrameVector:
    """Analytic rho * v in Cartesian components (the field the oracles probe)."""
    rho = states.pauli_eval(qn, p).norm_sq
    v = dynamics.pauli_velocity(qn, p).to_cartesian(p)
    return FrameVector(tuple(rho * c for c in v.components), Frame.CARTESIAN)


# --- reduced guidance law for spin eigenstates --------------------------------


def oracle_guidance_terms(
    qn: QuantumNumbers, p: SphericalPoint, cfg: OracleConfig
) -> tuple[np.ndarray, np.ndarray]:
    """(grad S, grad log rho x s) of the reduced guidance law, by central
    differences; s = (1/2) psi^dagger sigma psi / rho is the spin vector of
    the state's definite s_z.
    """
    if not states.is_spin_eigenstate(qn):
        raise NotASpinEigenstate(f"{qn} has two nonvanishing spinor components")
    h = cfg.fd_step
    _guard_fd(qn, p, h)
    x0 = np.array(p.to_cartesian())
    psi0 = _pauli_spinor_xyz(qn, *x0)
    comp = 0 if abs(psi0[0]) >= abs(psi0[1]) else 1
    rho0 = float(np.sum(np.abs(psi0) ** 2))

    grad_s = np.zeros(3)
    grad_log_rho = np.zeros(3)
    for axis in range(3):
        step = np.zeros(3)
        step[axis] = h
        psi_p = _pauli_spinor_xyz(qn, *(x0 + step))
        psi_m = _pauli_spinor_xyz(qn, *(x0 - step))
        # Phase difference through the ratio is immune to branch cuts.
        grad_s[axis] = cmath.phase(psi_p[comp] * psi_m[comp].conjugate()) / (2.0 * h)
        rho_p = float(np.sum(np.abs(psi_p) ** 2))
        rho_m = float(np.sum(np.abs(psi_m) ** 2))
        grad_log_rho[axis] = (math.log(rho_p) - math.log(rho_m)) / (2.0 * h)

    spin = 0.5 * _spin_cartesian(psi0) / rho0
    return grad_s, np.cross(grad_log_rho, spin)


def oracle_spin_reduction(
    qn: QuantumNumbers, p: SphericalPoint, cfg: OracleConfig
) -> FrameVector:
    """Velocity from p = grad S + grad log rho x s (spin eigenstates only)."""
    conv, spin_term = oracle_guidance_terms(qn, p, cfg)
    total = conv + spin_term
    return FrameVector(tuple(float(c) for c in total), Frame.CARTESIAN)


# --- brute-force Dirac current ------------------------------------------------

_SIGMA = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)
_ZERO2 = np.zeros((2, 2), dtype=complex)
_ALPHA_MATRICES = tuple(
    np.block([[_ZERO2, s], [s, _ZERO2]]) for s in _SIGMA
)


def oracle_dirac_current(
    qn: QuantumNumbers, p: SphericalPoint, model: ModelParams
) -> FrameVector:
    """j = c psi^dagger alpha psi by direct matrix contraction of the
    reconstructed 4-spinor (same g^2 scaling as dynamics.dirac_current).
    """
    ang = states.dirac_angular_eval(qn, p, model)
    g = 1.0 if qn.n != 1 else float(specfun.dirac_radial_ground(p.r, model)[0])
    psi = np.array(ang.components(g))
    comps = tuple(
        float(model.c * (psi.conjugate() @ (mat @ psi)).real)
        for mat in _ALPHA_MATRICES
    )
    return FrameVector(comps, Frame.CARTESIAN)


# --- divergence and normalization ----------------------------------------------


def check_divergence(
    qn: QuantumNumbers,
    p: SphericalPoint,
    cfg: OracleConfig,
    kind: str = "pauli",
    model: ModelParams | None = None,
) -> float:
    """Central-difference divergence of the analytic current at p.

    Stationary states carry divergence-free currents; the returned value
    should be zero up to the stencil's truncation error.
    """
    h = cfg.fd_step
    _guard_fd(qn, p, h)
    model = model if model is not None else ModelParams()

    def j(x: float, y: float, z: float) -> tuple[float, float, float]:
        pt = SphericalPoint.from_cartesian(x, y, z)
        if kind == "pauli":
            return pauli_current_cartesian(qn, pt).components
        return dynamics.dirac_current(qn, pt, model).components

    x0 = np.array(p.to_cartesian())
    div = 0.0
    for axis in range(3):
        step = np.zeros(3)
        step[axis] = h
        div += (j(*(x0 + step))[axis] - j(*(x0 - step))[axis]) / (2.0 * h)
    return float(div)


def _angular_grid(cfg: OracleConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(theta nodes, phi nodes, combined weights) of the product rule."""
    x, wx = specfun.gauss_legendre(cfg.n_theta)
    theta = np.arccos(x)
    phi, wphi = specfun.periodic_trapezoid(cfg.n_phi)
    weights = wx[:, None] * wphi[None, :]
    return theta[:, None], phi[None, :], weights


def check_normalization(
    qn: QuantumNumbers,
    cfg: OracleConfig,
    kind: str = "pauli",
    model: ModelParams | None = None,
) -> float:
    """int psi^dagger psi d^3x by product quadrature (Gauss-Legendre in
    cos theta, periodic trapezoid in phi, adaptive Gauss-Kronrod radially).

    Dirac normalization is only defined for the ground state, whose radial
    factor is fully specified; n = 2 Dirac states raise UnsupportedState.
    """
    model = model if model is not None else ModelParams()
    theta, phi, weights = _angular_grid(cfg)
    if kind == "pauli":
        v1, v2 = states.pauli_angular(qn, theta, phi)
        ang = float(np.sum(weights * (np.abs(v1) ** 2 + np.abs(v2) ** 2)))
        ang /= 2.0 * qn.l + 1.0
        radial, _ = _quad.quad(
            lambda r: float(specfun.radial_schrodinger(qn.n, qn.l, r)) ** 2 * r * r,
            0.0,
            cfg.r_max,
            limit=200,
        )
        return radial * ang

    if qn.n != 1:
        raise UnsupportedState(
            "Dirac normalization is checkable only for the ground state "
            "(n = 2 radial factors enter all rates only through -f/g)"
        )
    large, small = states._dirac_terms(qn)
    dens_large = np.zeros_like(theta * phi)
    dens_small = np.zeros_like(theta * phi)
    for coeff, deg, order in large:
        if coeff != 0.0:
            dens_large = dens_large + np.abs(coeff * specfun.sph_harm(deg, order, theta, phi)) ** 2
    for coeff, deg, order in small:
        if coeff != 0:
            dens_small = dens_small + np.abs(coeff * specfun.sph_harm(deg, order, theta, phi)) ** 2
    ang_large = float(np.sum(weights * dens_large))
    ang_small = float(np.sum(weights * dens_small))

    def g2(r: float) -> float:
        g, _f = specfun.dirac_radial_ground(r, model)
        return float(g) ** 2 * r * r

    def f2(r: float) -> float:
        _g, f = specfun.dirac_radial_ground(r, model)
        return float(f) ** 2 * r * r

    rad_large, _ = _quad.quad(g2, 0.0, cfg.r_max, limit=200, points=[1e-6, 0.1, 1.0])
    rad_small, _ = _quad.quad(f2, 0.0, cfg.r_max, limit=200, points=[1e-6, 0.1, 1.0])
    return rad_large * ang_large + rad_small * ang_small


# --- limit convergence ----------------------------------------------------------


def limit_convergence(
    qn: QuantumNumbers, p: SphericalPoint, cfg: OracleConfig
) -> tuple[float, float]:
    """Least-squares (slope, intercept) of log relative gap vs log alpha.

    The gap is |dirac_rate(alpha) - dirac_rate_nonrel_limit| / |limit| over
    the config's alpha ladder.  Raises DegenerateFit when the differences
    sit at rounding level: levels with a single-term radial solution have
    *no* alpha dependence in their rotation rate (the delta chain cancels
    identically), so there is nothing to regress.
    """
    limit = dynamics.dirac_rate_nonrel_limit(qn, p).rate
    if abs(limit) < 1e-12 / p.r:
        raise ZeroRate(f"limit rate vanishes at {p}; pick a point off the zero set")
    rel = []
    for alpha in cfg.alpha_ladder:
        exact = dynamics.dirac_rate(qn, p, ModelParams(alpha=alpha)).rate
        rel.append(abs(exact - limit) / abs(limit))
    if min(rel) == 0.0 or max(rel) < 1e-12:
        raise DegenerateFit(
            f"gap between exact and limiting rates is at rounding level "
            f"(max {max(rel):.3g}) for {qn}; no slope can be fitted"
        )
    slope, intercept = np.polyfit(np.log(cfg.alpha_ladder), np.log(rel), 1)
    return float(slope), float(intercept)


# --- the full cross-check suite --------------------------------------------------


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def _chk_legendre_orthonormality(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    x, w = specfun.gauss_legendre(cfg.n_theta)
    worst = 0.0
    for m in range(0, 4):
        for l1 in range(m, 4):
            for l2 in range(m, 4):
                val = float(np.sum(w * specfun.legendre_p(l1, m, x) * specfun.legendre_p(l2, m, x)))
                target = 1.0 if l1 == l2 else 0.0
                worst = max(worst, abs(val - target))
    return CheckResult(
        "specfun.legendre-orthonormality", worst <= 1e-10, worst, 1e-10,
        "int P_lm P_l'm dx = delta_ll' for l, l' <= 3",
    )


def _chk_legendre_negative_m(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    xs = np.linspace(-1.0, 1.0, 41)
    worst = 0.0
    for l in range(0, 4):
        for m in range(1, l + 1):
            sign = -1.0 if m % 2 else 1.0
            diff = np.max(
                np.abs(
                    specfun.legendre_p(l, -m, xs) - sign * specfun.legendre_p(l, m, xs)
                )
            )
            worst = max(worst, float(diff))
    return CheckResult(
        "specfun.legendre-negative-m", worst == 0.0, worst, 0.0,
        "P_{l,-m} = (-1)^m P_lm holds bitwise",
    )


def _chk_sph_harm_conjugation(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    theta = np.linspace(0.1, math.pi - 0.1, 13)[:, None]
    phi = np.linspace(0.0, 2.0 * math.pi, 17, endpoint=False)[None, :]
    worst = 0.0
    for l in range(0, 4):
        for m in range(-l, l + 1):
            lhs = np.conjugate(specfun.sph_harm(l, m, theta, phi))
            rhs = (-1.0) ** m * specfun.sph_harm(l, -m, theta, phi)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return CheckResult(
        "specfun.sph-harm-conjugation", worst <= 1e-14, worst, 1e-14,
        "Y_lm* = (-1)^m Y_{l,-m} pointwise",
    )


def _chk_radial_normalization(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    worst = 0.0
    for n, l in ((1, 0), (2, 0), (2, 1)):
        val, _ = _quad.quad(
            lambda r: float(specfun.radial_schrodinger(n, l, r)) ** 2 * r * r,
            0.0,
            cfg.r_max,
            limit=200,
        )
        worst = max(worst, abs(val - 1.0))
    return CheckResult(
        "specfun.radial-normalization", worst <= 1e-10, worst, 1e-10,
        "int R_nl^2 r^2 dr = 1 for the three implemented functions",
    )


def _chk_axial_symmetry(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    rng = cfg.rng()
    worst = 0.0
    for qn in states.enumerate_states(2):
        r = rng.uniform(0.5, 5.0)
        theta = rng.uniform(0.3, math.pi - 0.3)
        values = [
            states.pauli_eval(qn, SphericalPoint(r, theta, phi)).norm_sq
            for phi in np.linspace(0.0, 2.0 * math.pi, 17, endpoint=False)
        ]
        spread = (max(values) - min(values)) / max(values)
        worst = max(worst, spread)
    return CheckResult(
        "states.density-axial-symmetry", worst <= 1e-12, worst, 1e-12,
        "psi^dagger psi independent of phi for all 10 labels",
    )


def _chk_coupling_orthogonality(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    theta, phi, weights = _angular_grid(cfg)
    qa = states.validate_qn(2, 1, 1.5, 0.5)
    qb = states.validate_qn(2, 1, 0.5, 0.5)
    a1, a2 = states.pauli_angular(qa, theta, phi)
    b1, b2 = states.pauli_angular(qb, theta, phi)
    overlap = abs(complex(np.sum(weights * (np.conjugate(a1) * b1 + np.conjugate(a2) * b2))))
    return CheckResult(
        "states.coupling-orthogonality", overlap <= 1e-10, overlap, 1e-10,
        "j = l + 1/2 and j = l - 1/2 blocks orthogonal over angles",
    )


def _chk_dirac_phase_structure(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    rng = cfg.rng()
    worst = 0.0
    for qn in states.enumerate_states(2):
        for p in sample_points(qn, 5, rng):
            ang = states.dirac_angular_eval(qn, p, model)
            for u, shift in ((ang.u3, -0.5), (ang.u4, +0.5)):
                if u == 0j:
                    continue
                # Strip the azimuthal phase and the -i prefactor: what is
                # left must be real.
                value = u * cmath.exp(-1j * (qn.m + shift) * p.phi) / (-1j)
                worst = max(worst, abs(value.imag) / max(abs(value), 1e-300))
    return CheckResult(
        "states.dirac-small-component-phase", worst <= 1e-14, worst, 1e-14,
        "psi_3, psi_4 are -i (or +i) times real angular factors times phases",
    )


def _chk_oracle_current_agreement(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    rng = cfg.rng()
    worst = 0.0
    for qn in states.enumerate_states(2):
        for p in sample_points(qn, 50, rng):
            fd = np.array(oracle_pauli_current(qn, p, cfg).components)
            an = np.array(pauli_current_cartesian(qn, p).components)
            scale = max(float(np.linalg.norm(an)), 1e-300)
            worst = max(worst, float(np.linalg.norm(fd - an)) / scale)
    return CheckResult(
        "verify.fd-current-vs-analytic", worst <= 1e-6, worst, 1e-6,
        "finite-difference Pauli current matches rho v (50 pts x 10 states)",
    )


def _chk_azimuthal_purity(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    rng = cfg.rng()
    worst = 0.0
    for qn in states.enumerate_states(2):
        for p in sample_points(qn, 10, rng):
            fd = oracle_pauli_current(qn, p, cfg).to_local(p).components
            azi = max(abs(fd[2]), 1e-300)
            worst = max(worst, abs(fd[0]) / azi, abs(fd[1]) / azi)
    return CheckResult(
        "dynamics.azimuthal-purity", worst <= 1e-7, worst, 1e-7,
        "radial/polar current components vanish (finite-difference probe)",
    )


def _chk_m_antisymmetry(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    rng = cfg.rng()
    worst = 0.0
    sources = (
        RateSource.PAULI_ASSEMBLED,
        RateSource.PAULI_CLOSED_FORM,
        RateSource.DIRAC_EXACT,
        RateSource.DIRAC_NONREL_LIMIT,
    )
    for qn in states.enumerate_states(2):
        if qn.m < 0:
            continue
        partner = qn.with_m(-qn.m)
        for p in sample_points(qn, 10, rng):
            for source in sources:
                plus = dynamics.rate(qn, p, model, source).rate
                minus = dynamics.rate(partner, p, model, source).rate
                worst = max(worst, abs(plus + minus) / max(abs(plus), 1e-300))
    return CheckResult(
        "dynamics.m-antisymmetry", worst <= 1e-12, worst, 1e-12,
        "rate(-m) = -rate(+m), every source, independent evaluations",
    )


def _chk_assembly_vs_closed_form(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    worst = 0.0
    for qn in states.enumerate_states(2):
        rs = np.linspace(0.3, 7.5, 20)
        thetas = np.linspace(0.25, math.pi - 0.25, 20)
        for r in rs:
            for theta in thetas:
                if _excluded(qn, float(r), float(theta)):
                    continue
                p = SphericalPoint(float(r), float(theta), 0.7)
                assembled = dynamics.pauli_rate_assembled(qn, p).rate
                closed = dynamics.pauli_rate_closed_form(qn, p).rate
                worst = max(worst, _rel(assembled, closed))
    return CheckResult(
        "dynamics.pauli-assembly-vs-closed-form", worst <= 1e-10, worst, 1e-10,
        "(v_a + v_b)/(r sin theta) equals the tabulated rate on a 20x20 grid",
    )


_LIMIT_CASES = (
    (1, 0, 0.5, 0.5),
    (2, 0, 0.5, 0.5),
    (2, 1, 1.5, 1.5),
    (2, 1, 0.5, 0.5),
    (2, 1, 1.5, 0.5),
)


def _chk_limit_slopes(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    rng = cfg.rng()
    failures: list[str] = []
    worst_dev = 0.0
    for label in _LIMIT_CASES:
        qn = states.validate_qn(*label)
        for p in sample_points(qn, 5, rng):
            try:
                slope, _ = limit_convergence(qn, p, cfg)
            except DegenerateFit as exc:
                failures.append(f"{qn}: {exc}")
                break
            worst_dev = max(worst_dev, abs(slope - 2.0))
            if abs(slope - 2.0) > 0.1:
                failures.append(f"{qn}: slope {slope:.3f} at {p}")
    detail = "log-log slope of |exact - limit| vs alpha within 2.0 +- 0.1"
    if failures:
        detail += "; " + " | ".join(failures[:4])
    return CheckResult(
        "dynamics.dirac-limit-slope", not failures, worst_dev, 0.1, detail,
    )


def _chk_spinor_identity(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    rng = cfg.rng()
    comps = rng.standard_normal((1000, 4))
    worst = 0.0
    for row in comps:
        s2 = states.Spinor2(complex(row[0], row[1]), complex(row[2], row[3]))
        w = _spin_cartesian(np.array([s2.c1, s2.c2]))
        worst = max(worst, _rel(float(np.linalg.norm(w)), s2.norm_sq))
    return CheckResult(
        "dynamics.spinor-identity", worst <= 1e-13, worst, 1e-13,
        "|psi^dagger sigma psi| = psi^dagger psi on 1000 random spinors",
    )


def _chk_spin_azimuthal_zero(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    rng = cfg.rng()
    worst = 0.0
    for qn in states.enumerate_states(2):
        for p in sample_points(qn, 10, rng):
            sv = dynamics.spin_vector(states.pauli_eval(qn, p), p, qn)
            w_phi = sv.w.to_local(p).components[2]
            worst = max(worst, abs(w_phi) / max(sv.r_s, 1e-300))
    return CheckResult(
        "dynamics.spin-azimuthal-zero", worst <= 1e-13, worst, 1e-13,
        "spin vector lies in the (r, z) plane for every Pauli state",
    )


def _chk_dirac_reconstruction(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    rng = cfg.rng()
    worst = 0.0
    worst_jz = 0.0
    for qn in states.enumerate_states(2):
        for p in sample_points(qn, 20, rng):
            closed = np.array(dynamics.dirac_current(qn, p, model).components)
            brute = np.array(oracle_dirac_current(qn, p, model).components)
            scale = max(float(np.linalg.norm(brute)), 1e-300)
            worst = max(worst, float(np.linalg.norm(closed - brute)) / scale)
            worst_jz = max(worst_jz, abs(brute[2]) / scale)
    passed = worst <= 1e-12 and worst_jz <= 1e-13
    return CheckResult(
        "dynamics.dirac-current-reconstruction", passed, max(worst, worst_jz), 1e-12,
        f"F/G closed form vs alpha-matrix contraction (j_z ratio {worst_jz:.2e})",
    )


def _chk_trajectory_conservation(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    rng = cfg.rng()
    worst = 0.0
    for qn in states.enumerate_states(2):
        p = sample_points(qn, 1, rng)[0]
        omega = dynamics.dirac_rate(qn, p, model).rate
        if abs(omega) < 1e-6:
            continue
        revs = 10.0
        duration = revs * 2.0 * math.pi / abs(omega)
        traj = trajectories.integrate(
            qn, model, p, duration, int(revs * 1024), source=RateSource.DIRAC_EXACT
        )
        rep = trajectories.circularity_report(traj)
        worst = max(worst, rep.max_radius_drift, rep.max_z_drift, rep.phi_fit_residual)
    return CheckResult(
        "trajectories.conservation", worst <= 1e-8, worst, 1e-8,
        "r, z and phi-linearity over 10 revolutions at 1024 steps/rev",
    )


def _chk_trajectory_reversal(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    rng = cfg.rng()
    worst = 0.0
    for label in ((1, 0, 0.5, 0.5), (2, 1, 1.5, 1.5)):
        qn = states.validate_qn(*label)
        partner = qn.with_m(-qn.m)
        p = sample_points(qn, 1, rng)[0]
        omega = dynamics.pauli_rate_assembled(qn, p).rate
        duration = 2.0 * math.pi / abs(omega)
        fwd = trajectories.integrate(qn, model, p, duration, 2048)
        bwd = trajectories.integrate(partner, model, p, duration, 2048)
        phi0 = p.phi
        for sf, sb in zip(fwd.samples, bwd.samples):
            d = (sf.position.phi - phi0) + (sb.position.phi - phi0)
            d = (d + math.pi) % (2.0 * math.pi) - math.pi
            worst = max(worst, abs(d))
    return CheckResult(
        "trajectories.reversal-symmetry", worst <= 1e-9, worst, 1e-9,
        "the -m partner traces the same circle with opposite orientation",
    )


def _chk_spin_reduction(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    rng = cfg.rng()
    worst = 0.0
    worst_conv = 0.0
    for label in ((1, 0, 0.5, 0.5), (2, 0, 0.5, 0.5), (2, 1, 1.5, 1.5)):
        qn = states.validate_qn(*label)
        for p in sample_points(qn, 10, rng):
            reduced = np.array(oracle_spin_reduction(qn, p, cfg).components)
            full = np.array(dynamics.pauli_velocity(qn, p).to_cartesian(p).components)
            scale = max(float(np.linalg.norm(full)), 1e-300)
            worst = max(worst, float(np.linalg.norm(reduced - full)) / scale)
            if qn.l == 0:
                conv, _spin = oracle_guidance_terms(qn, p, cfg)
                worst_conv = max(worst_conv, float(np.linalg.norm(conv)) / scale)
    passed = worst <= 1e-6 and worst_conv <= 1e-10
    return CheckResult(
        "verify.spin-reduction", passed, max(worst, worst_conv), 1e-6,
        f"reduced guidance law vs full velocity (s-state convective part {worst_conv:.2e})",
    )


def _chk_divergence(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    rng = cfg.rng()
    worst = 0.0
    for qn in states.enumerate_states(2):
        for p in sample_points(qn, 50, rng):
            div = check_divergence(qn, p, cfg, kind="pauli")
            norm = np.linalg.norm(pauli_current_cartesian(qn, p).components)
            worst = max(worst, abs(div) / max(float(norm), 1e-300))
    return CheckResult(
        "verify.divergence-free", worst <= 1e-6, worst, 1e-6,
        "|div j| <= 1e-6 ||j|| at 50 points per state",
    )


def _chk_normalization(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    worst_pauli = 0.0
    for qn in states.enumerate_states(2):
        worst_pauli = max(worst_pauli, abs(check_normalization(qn, cfg) - 1.0))
    ground = states.validate_qn(1, 0, 0.5, 0.5)
    dirac_err = abs(check_normalization(ground, cfg, kind="dirac", model=model) - 1.0)
    passed = worst_pauli <= 1e-8 and dirac_err <= 1e-6
    return CheckResult(
        "verify.normalization", passed, max(worst_pauli, dirac_err), 1e-6,
        f"int psi^dagger psi = 1 (Pauli worst {worst_pauli:.2e}, Dirac ground {dirac_err:.2e})",
    )


def _chk_fd_order(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    qn = states.validate_qn(2, 1, 1.5, 1.5)
    p = SphericalPoint(1.7, 1.1, 0.4)
    coarse = abs(check_divergence(qn, p, OracleConfig(fd_step=1e-2, seed=cfg.seed)))
    fine = abs(check_divergence(qn, p, OracleConfig(fd_step=1e-3, seed=cfg.seed)))
    ratio = coarse / max(fine, 1e-300)
    passed = 30.0 <= ratio <= 300.0
    return CheckResult(
        "verify.fd-second-order", passed, ratio, 100.0,
        "10x coarser step degrades the divergence residual ~100x",
    )


def _chk_report_round_trip(cfg: OracleConfig, model: ModelParams) -> CheckResult:
    from . import report

    qn = states.validate_qn(1, 0, 0.5, 0.5)
    p = SphericalPoint(1.0, math.pi / 2.0, 0.0)
    traj = trajectories.integrate(qn, model, p, 0.5, 64)
    csv_text = report.trajectory_csv(traj)
    parsed = report.parse_trajectory_csv(csv_text)
    worst = 0.0
    for sample, row in zip(traj.samples, parsed):
        x, y, z = sample.position.to_cartesian()
        vals = (sample.t, x, y, z) + sample.velocity.components
        worst = max(abs(a - b) for a, b in zip(vals, row))
    return CheckResult(
        "cli.csv-round-trip", worst == 0.0, worst, 0.0,
        "emitted CSV parses back bit-exactly",
    )


_CHECKS: tuple[Callable[[OracleConfig, ModelParams], CheckResult], ...] = (
    _chk_legendre_orthonormality,
    _chk_legendre_negative_m,
    _chk_sph_harm_conjugation,
    _chk_radial_normalization,
    _chk_axial_symmetry,
    _chk_coupling_orthogonality,
    _chk_dirac_phase_structure,
    _chk_spinor_identity,
    _chk_spin_azimuthal_zero,
    _chk_assembly_vs_closed_form,
    _chk_m_antisymmetry,
    _chk_dirac_reconstruction,
    _chk_limit_slopes,
    _chk_oracle_current_agreement,
    _chk_azimuthal_purity,
    _chk_spin_reduction,
    _chk_divergence,
    _chk_normalization,
    _chk_fd_order,
    _chk_trajectory_conservation,
    _chk_trajectory_reversal,
    _chk_report_round_trip,
)


def run_all(
    cfg: OracleConfig | None = None,
    model: ModelParams | None = None,
    progress: Callable[[str], None] | None = None,
) -> list[CheckResult]:
    """Run every cross-check; results are bit-reproducible for a fixed seed."""
    cfg = cfg if cfg is not None else OracleConfig()
    model = model if model is not None else ModelParams()
    results = []
    for chk in _CHECKS:
        if progress is not None:
            progress(chk.__name__.replace("_chk_", ""))
        results.append(chk(cfg, model))
    return results
