"""Closed-form curvature references for the exponential-profile 4d family.

Everything here is transcribed verbatim from the displayed formulas for
alpha = r e^(lambda t) on R x S^3, with no algebraic simplification, so that
agreement with the numeric engine is a genuine two-sided check.  The only
exception is |t| > 300, where cosh^2 would overflow: those branches combine
exponents in log space before exponentiating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import ChartPoint

__all__ = [
    "ClosedForm4D", "DeSitterReference", "q_lambda", "f_lambda",
    "metric_closed", "christoffel_closed", "ricci_closed", "scalar_closed",
    "desitter_ricci", "desitter_lambda",
]

_LOG_SPACE_T = 300.0


@dataclass(frozen=True)
class ClosedForm4D:
    """Parameters of the timelike exponential family: |lambda| < 1, r > 0."""

    lam: float
    r: float = 1.0

    def __post_init__(self):
        if not abs(self.lam) < 1.0:
            raise ValueError(f"closed forms require |lambda| < 1, got {self.lam}")
        if not self.r > 0.0:
            raise ValueError(f"radius must be positive, got {self.r}")


def q_lambda(cf: ClosedForm4D, t: float) -> float:
    """(lambda + tanh t) cosh^2 t / (1 - lambda^2)."""
    if abs(t) <= _LOG_SPACE_T:
        c = math.cosh(t)
        return (cf.lam + math.tanh(t)) * c * c / (1.0 - cf.lam * cf.lam)
    # cosh^2 ~ e^(2|t|)/4; tanh saturates to +-1
    if t > 0.0:
        return math.exp(2.0 * t - math.log(4.0 * (1.0 - cf.lam)))
    return -math.exp(-2.0 * t - math.log(4.0 * (1.0 + cf.lam)))


def f_lambda(cf: ClosedForm4D, t: float) -> float:
    """((lam cosh + sinh)(3 sinh + 2 lam cosh) + 3 - 2 lam^2) / (1 - lam^2)."""
    lam = cf.lam
    if abs(t) <= _LOG_SPACE_T:
        c, s = math.cosh(t), math.sinh(t)
        return ((lam * c + s) * (3.0 * s + 2.0 * lam * c) + 3.0 - 2.0 * lam * lam) \
            / (1.0 - lam * lam)
    if t > 0.0:
        return math.exp(2.0 * t + math.log((3.0 + 2.0 * lam) / (4.0 * (1.0 - lam))))
    return math.exp(-2.0 * t + math.log((3.0 - 2.0 * lam) / (4.0 * (1.0 + lam))))


def _alpha(cf: ClosedForm4D, t: float) -> float:
    return cf.r * math.exp(cf.lam * t)


def _require_s3(point: ChartPoint) -> tuple[float, float, float, float]:
    if point.n != 3:
        raise ValueError(f"closed forms are for R x S^3, point has n={point.n}")
    return (point.t, *point.angles)


def metric_closed(cf: ClosedForm4D, point: ChartPoint) -> np.ndarray:
    """Diagonal metric components g_tt, g_psi, g_theta, g_phi of the family."""
    t, psi, theta, _ = _require_s3(point)
    lam = cf.lam
    a2 = _alpha(cf, t) ** 2
    c2 = math.cosh(t) ** 2
    sp2 = math.sin(psi) ** 2
    st2 = math.sin(theta) ** 2
    return np.diag([
        a2 * (lam * lam - 1.0),
        a2 * c2,
        a2 * c2 * sp2,
        a2 * c2 * sp2 * st2,
    ])


def christoffel_closed(cf: ClosedForm4D, point: ChartPoint) -> np.ndarray:
    """All nonzero Christoffel symbols of the family, lower indices symmetrized."""
    t, psi, theta, _ = _require_s3(point)
    lam = cf.lam
    q = q_lambda(cf, t)
    lt = lam + math.tanh(t)
    sp, cp = math.sin(psi), math.cos(psi)
    st, ct = math.sin(theta), math.cos(theta)

    gamma = np.zeros((4, 4, 4))
    T, PSI, THETA, PHI = 0, 1, 2, 3
    gamma[T, T, T] = lam
    gamma[T, PSI, PSI] = q
    gamma[T, THETA, THETA] = q * sp * sp
    gamma[T, PHI, PHI] = q * sp * sp * st * st
    gamma[PSI, T, PSI] = gamma[PSI, PSI, T] = lt
    gamma[PSI, THETA, THETA] = -sp * cp
    gamma[PSI, PHI, PHI] = -st * st * sp * cp
    gamma[THETA, T, THETA] = gamma[THETA, THETA, T] = lt
    gamma[THETA, PHI, PHI] = -st * ct
    gamma[THETA, PSI, THETA] = gamma[THETA, THETA, PSI] = cp / sp
    gamma[PHI, T, PHI] = gamma[PHI, PHI, T] = lt
    gamma[PHI, PSI, PHI] = gamma[PHI, PHI, PSI] = cp / sp
    gamma[PHI, THETA, PHI] = gamma[PHI, PHI, THETA] = ct / st
    return gamma


def ricci_closed(cf: ClosedForm4D, point: ChartPoint) -> np.ndarray:
    """Diagonal Ricci components R_tt, R_psi, R_theta, R_phi of the family."""
    t, psi, theta, _ = _require_s3(point)
    f = f_lambda(cf, t)
    sp2 = math.sin(psi) ** 2
    st2 = math.sin(theta) ** 2
    return np.diag([
        -3.0 * (1.0 + cf.lam * math.tanh(t)),
        f,
        f * sp2,
        f * sp2 * st2,
    ])


def scalar_closed(cf: ClosedForm4D, t: float) -> float:
    """S = (3/alpha^2) ((1 + lam tanh t)/(1 - lam^2) + f_lambda / cosh^2 t)."""
    lam = cf.lam
    one = 1.0 - lam * lam
    if abs(t) <= _LOG_SPACE_T:
        a2 = _alpha(cf, t) ** 2
        return 3.0 / a2 * ((1.0 + lam * math.tanh(t)) / one
                           + f_lambda(cf, t) / math.cosh(t) ** 2)
    # combine the 1/alpha^2 exponent before exponentiating; the bracket is O(1)
    w = math.tanh(t)
    bracket = (1.0 + lam * w) / one + (lam + w) * (3.0 * w + 2.0 * lam) / one
    return 3.0 * math.exp(-2.0 * (math.log(cf.r) + lam * t)) * bracket


@dataclass(frozen=True)
class DeSitterReference:
    """Reference values for the round hyperboloid of radius r in n+2 dimensions."""

    n: int
    r: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("sphere dimension must be >= 1")
        if not self.r > 0.0:
            raise ValueError("radius must be positive")


def desitter_ricci(ref: DeSitterReference, g: np.ndarray) -> np.ndarray:
    """R_mn = (n / r^2) g_mn."""
    return (ref.n / (ref.r * ref.r)) * np.asarray(g, dtype=float)


def desitter_lambda(ref: DeSitterReference) -> float:
    """Cosmological constant n(n-1)/(2 r^2); cross-checked against (n-1) S / (2(n+1))."""
    n, r = ref.n, ref.r
    value = n * (n - 1) / (2.0 * r * r)
    scalar = n * (n + 1) / (r * r)
    alt = (n - 1) / (2.0 * (n + 1)) * scalar
    if abs(alt - value) > 1e-12 * (1.0 + abs(value)):  # pragma: no cover
        raise AssertionError("cosmological constant identities disagree")
    return value
