"""Special functions in the normalization used throughout this package.

Associated Legendre functions carry the unit-norm prefactor

    P_lm(x) = sqrt((2l+1)/2 * (l-m)!/(l+m)!) / (2^l l!)
              * (1-x^2)^(m/2) d^(l+m)/dx^(l+m) (x^2-1)^l       (m >= 0)
    P_{l,-m}(x) = (-1)^m P_lm(x)

so that int_{-1}^{1} P_lm^2 dx = 1.  There is *no* Condon-Shortley (-1)^m
for positive m; the sign analysis of the velocity fields under m -> -m
depends on this choice.  Spherical harmonics are

    Y_lm(theta, phi) = (1/sqrt(2 pi)) P_lm(cos theta) e^(i m phi),

orthonormal over the sphere.

All functions accept floats or numpy arrays (arithmetic is polymorphic);
hot scalar paths stay free of array overhead.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from .errors import DomainError, NodeSingularity, UnsupportedState

if TYPE_CHECKING:
    from .params import ModelParams

_SQRT1_2 = math.sqrt(0.5)          # P_00
_SQRT3_2 = math.sqrt(1.5)          # P_10 coefficient
_SQRT3_4 = math.sqrt(3.0) / 2.0    # P_11 coefficient
_SQRT5_2 = math.sqrt(2.5)          # P_20 coefficient
_SQRT15_2 = math.sqrt(15.0) / 2.0  # P_21 coefficient
_SQRT15_4 = math.sqrt(15.0) / 4.0  # P_22 coefficient


def _check_degree_order(l: int, m: int) -> None:
    if l < 0 or not isinstance(l, (int, np.integer)):
        raise DomainError(f"degree l must be a non-negative integer, got {l!r}")
    if abs(m) > l:
        raise DomainError(f"order |m| = {abs(m)} exceeds degree l = {l}")


def _check_argument(x) -> None:
    if isinstance(x, float):  # np.float64 subclasses float; NaN fails the chain
        if not -1.0 <= x <= 1.0:
            raise DomainError("Legendre argument |x| > 1 is outside the domain")
        return
    if np.any(np.abs(x) > 1.0):
        raise DomainError("Legendre argument |x| > 1 is outside the domain")


def legendre_p(l: int, m: int, x):
    """Unit-norm associated Legendre function P_lm(x), |x| <= 1.

    Closed forms cover l <= 2 (everything the n <= 2 eigenstates need);
    higher degrees go through the standard three-term recurrence in the
    same normalization.  Negative orders apply (-1)^m exactly, so
    legendre_p(l, -m, x) == (-1)**m * legendre_p(l, m, x) bitwise.
    """
    _check_degree_order(l, m)
    _check_argument(x)
    if m < 0:
        mag = legendre_p(l, -m, x)
        return -mag if (-m) % 2 == 1 else mag

    if l == 0:
        return _SQRT1_2 + 0.0 * x
    if l == 1:
        if m == 0:
            return _SQRT3_2 * x
        return _SQRT3_4 * (1.0 - x * x) ** 0.5
    if l == 2:
        if m == 0:
            return _SQRT5_2 * 0.5 * (3.0 * x * x - 1.0)
        if m == 1:
            return _SQRT15_2 * x * (1.0 - x * x) ** 0.5
        return _SQRT15_4 * (1.0 - x * x)

    return _legendre_recurrence(l, m, x)


def _legendre_recurrence(l: int, m: int, x):
    """Upward recurrence in degree for the unit-norm functions, m >= 0."""
    s = (1.0 - x * x) ** 0.5
    p_mm = _SQRT1_2 + 0.0 * x
    for k in range(1, m + 1):
        p_mm = math.sqrt((2.0 * k + 1.0) / (2.0 * k)) * s * p_mm
    if l == m:
        return p_mm
    p_prev, p_curr = p_mm, math.sqrt(2.0 * m + 3.0) * x * p_mm
    for ll in range(m + 2, l + 1):
        alpha = math.sqrt(
            (2.0 * ll - 1.0) * (2.0 * ll + 1.0) / ((ll - m) * (ll + m))
        )
        beta = math.sqrt(
            (2.0 * ll + 1.0) * (ll + m - 1.0) * (ll - m - 1.0)
            / ((2.0 * ll - 3.0) * (ll - m) * (ll + m))
        )
        p_prev, p_curr = p_curr, alpha * x * p_curr - beta * p_prev
    return p_curr


def cos_polymorphic(theta):
    """math.cos for scalars, np.cos for arrays (hot-path helper)."""
    return math.cos(theta) if isinstance(theta, float) else np.cos(theta)


def legendre_p_dtheta(l: int, m: int, theta):
    """d/dtheta of P_lm(cos theta), valid for any |m| <= l.

    Uses the order-raising/lowering identity of the unit-norm functions;
    the coefficients vanish exactly where the shifted order would leave
    the valid range.
    """
    _check_degree_order(l, m)
    x = cos_polymorphic(theta)
    up = (l - m) * (l + m + 1.0)
    dn = (l + m) * (l - m + 1.0)
    out = 0.0
    if up > 0.0:
        out = out - 0.5 * math.sqrt(up) * legendre_p(l, m + 1, x)
    if dn > 0.0:
        out = out + 0.5 * math.sqrt(dn) * legendre_p(l, m - 1, x)
    return out + 0.0 * x


def sph_harm(l: int, m: int, theta, phi):
    """Spherical harmonic Y_lm(theta, phi) = P_lm(cos theta) e^(imphi)/sqrt(2pi)."""
    _check_degree_order(l, m)
    return legendre_p(l, m, np.cos(theta)) * np.exp(1j * m * phi) / math.sqrt(2.0 * math.pi)


# --- hydrogen radial functions (atomic units, a = 1) -----------------------

_R20_NORM = 1.0 / math.sqrt(2.0)
_R21_NORM = 1.0 / (2.0 * math.sqrt(6.0))


def radial_schrodinger(n: int, l: int, r):
    """Schroedinger radial function R_nl(r) with int R^2 r^2 dr = 1.

    Only the n <= 2 closed forms are provided: R_10 = 2 e^-r,
    R_20 = (1 - r/2) e^(-r/2) / sqrt(2), R_21 = r e^(-r/2) / (2 sqrt(6)).
    """
    _check_radial_label(n, l)
    if isinstance(r, float):
        if r < 0.0:
            raise DomainError("radius must be non-negative")
        exp = math.exp
    else:
        if np.any(np.asarray(r) < 0.0):
            raise DomainError("radius must be non-negative")
        exp = np.exp
    if n == 1:
        return 2.0 * exp(-r)
    if l == 0:
        return _R20_NORM * (1.0 - 0.5 * r) * exp(-0.5 * r)
    return _R21_NORM * r * exp(-0.5 * r)


def radial_logderiv(n: int, l: int, r: float) -> float:
    """R'_nl(r) / R_nl(r), closed form; raises NodeSingularity on nodes."""
    _check_radial_label(n, l)
    if r <= 0.0:
        raise DomainError("radius must be positive for the log-derivative")
    if n == 1:
        return -1.0
    if l == 0:
        u = 1.0 - 0.5 * r
        if abs(u) < 1e-14:
            raise NodeSingularity(f"2s radial node at r = 2 (got r = {r})")
        return -0.5 * (1.0 + 1.0 / u)
    return 1.0 / r - 0.5


def _check_radial_label(n: int, l: int) -> None:
    if n not in (1, 2):
        raise UnsupportedState(f"radial functions implemented for n in {{1, 2}}, got n = {n}")
    if not 0 <= l < n:
        raise DomainError(f"need 0 <= l < n, got l = {l}, n = {n}")


def ln_gamma(x: float) -> float:
    """Natural log of the Gamma function for x > 0."""
    if x <= 0.0:
        raise DomainError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def eps_ratio(t: float) -> float:
    """sqrt((1 - eps)/(1 + eps)) for a scaled energy eps = (1 + t^2)^(-1/2).

    Evaluated as t / (1 + sqrt(1 + t^2)): the same number exactly, but the
    cancellation in 1 - eps (which costs ~12 digits at physical alpha)
    never happens.
    """
    return t / (1.0 + math.hypot(1.0, t))


def dirac_radial_ground(r, model: "ModelParams"):
    """Ground-state Dirac radial pair (g, f) at radius r > 0.

    g(r) = (2/a)^(3/2) sqrt((1 + eps1) / (2 Gamma(2 gamma1 + 1)))
           e^(-rho1/2) rho1^(gamma1 - 1),     rho1 = 2 r / a,
    f(r) = -sqrt((1 - eps1) / (1 + eps1)) g(r) = -delta g(r).

    rho1^(gamma1 - 1) diverges (weakly) as r -> 0, so r = 0 is rejected.
    """
    if np.any(np.asarray(r) <= 0.0):
        raise DomainError("dirac_radial_ground requires r > 0")
    gamma1 = model.gamma1
    eps1 = model.eps1
    delta = eps_ratio(model.alpha / gamma1)
    norm = 2.0**1.5 * math.sqrt((1.0 + eps1) / (2.0 * math.exp(ln_gamma(2.0 * gamma1 + 1.0))))
    rho = 2.0 * r
    g = norm * np.exp(-0.5 * rho) * np.exp((gamma1 - 1.0) * np.log(rho))
    return g, -delta * g


# --- quadrature rules (the package-wide defaults) ---------------------------


def gauss_legendre(n: int = 64) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1]."""
    return np.polynomial.legendre.leggauss(n)


def periodic_trapezoid(n: int = 128) -> tuple[np.ndarray, np.ndarray]:
    """Equispaced nodes and weights on [0, 2 pi) (exact for trig polys)."""
    nodes = 2.0 * math.pi * np.arange(n) / n
    weights = np.full(n, 2.0 * math.pi / n)
    return nodes, weights
