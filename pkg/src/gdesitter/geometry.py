"""Chart geometry: the round sphere block, the warped metric, and the embedding.

Coordinates on R x S^n are (t, phi_1, ..., phi_n) with nested hyperspherical
angles: phi_1..phi_{n-1} are polar (range (0, pi)), phi_n is azimuthal (range
[0, 2 pi)).  Curvature work stays inside a margin of 0.05 rad from the polar
degeneracies, which keeps every 1/sin factor below ~20.

The ambient space is Minkowski R^{n+2} with quadratic form
omega(x) = -(x^0)^2 + (x^1)^2 + ... + (x^{n+1})^2; the embedding is
x^0 = alpha sinh t, x^i = z^i alpha cosh t with z on the unit n-sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotInPsi, NotOnSurface, OutOfChart, OutOfRange
from .jets import jet_var
from .profiles import (GridSpec, Profile, beta, check_psi, eval_jet, h_jet)

__all__ = [
    "CHART_MARGIN", "ChartPoint", "MetricData", "MetricField",
    "round_metric", "warped_metric", "hyperspherical_to_cartesian",
    "cartesian_to_hyperspherical", "embed", "embedding_jacobian",
    "embed_inverse", "defining_residual", "pullback_check",
]

CHART_MARGIN = 0.05

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ChartPoint:
    """A point (t, phi_1..phi_n) on the R x S^n chart."""

    t: float
    angles: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(float(a) for a in self.angles))
        object.__setattr__(self, "t", float(self.t))

    @property
    def n(self) -> int:
        return len(self.angles)

    def require_interior(self, margin: float = CHART_MARGIN) -> None:
        """Raise OutOfChart unless all polar angles keep clear of {0, pi}."""
        for j, phi in enumerate(self.angles[:-1]):
            if not (margin < phi < math.pi - margin):
                raise OutOfChart(
                    f"polar angle phi_{j + 1}={phi} within {margin} of a pole")
        if self.angles and not (0.0 <= self.angles[-1] < _TWO_PI):
            raise OutOfChart(
                f"azimuthal angle {self.angles[-1]} outside [0, 2pi)")


def round_metric(n: int, angles, margin: float = CHART_MARGIN) -> np.ndarray:
    """Diagonal round metric on S^n: entry i is the product of sin^2 over earlier angles."""
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    angles = tuple(float(a) for a in angles)
    if len(angles) != n:
        raise ValueError(f"expected {n} angles, got {len(angles)}")
    ChartPoint(0.0, angles).require_interior(margin)
    out = np.zeros((n, n))
    acc = 1.0
    for i in range(n):
        out[i, i] = acc
        s = math.sin(angles[i])
        acc *= s * s
    return out


# ---------------------------------------------------------------------------
# sphere parametrization
# ---------------------------------------------------------------------------

def hyperspherical_to_cartesian(angles) -> np.ndarray:
    """Unit vector z in R^{n+1} for n nested angles."""
    angles = tuple(float(a) for a in angles)
    n = len(angles)
    z = np.zeros(n + 1)
    acc = 1.0
    for i, phi in enumerate(angles):
        z[i] = acc * math.cos(phi)
        acc *= math.sin(phi)
    z[n] = acc
    return z


def cartesian_to_hyperspherical(z) -> tuple[float, ...]:
    """Inverse of the nested-angle map; degenerate trailing angles come out 0."""
    z = np.asarray(z, dtype=float)
    n = len(z) - 1
    angles = []
    for i in range(n - 1):
        tail = math.sqrt(float(np.dot(z[i + 1:], z[i + 1:])))
        angles.append(math.atan2(tail, float(z[i])))
    phi_n = math.atan2(float(z[n]), float(z[n - 1])) % _TWO_PI
    angles.append(phi_n)
    return tuple(angles)


def _sphere_jacobian(angles) -> np.ndarray:
    """d z / d phi for the nested-angle map, shape (n+1, n)."""
    angles = tuple(float(a) for a in angles)
    n = len(angles)
    sin = [math.sin(a) for a in angles]
    cos = [math.cos(a) for a in angles]

    def prefix(upto: int, skip: int = -1) -> float:
        acc = 1.0
        for k in range(upto):
            acc *= cos[k] if k == skip else sin[k]
        return acc

    jac = np.zeros((n + 1, n))
    for i in range(n + 1):
        # z_i = prod_{k<i} sin * (cos_i if i < n else 1)
        for j in range(n):
            if j > i or (j == i and i == n):
                continue
            if j == i:
                jac[i, j] = -prefix(i) * sin[i]
            else:
                tail = cos[i] if i < n else 1.0
                jac[i, j] = prefix(i, skip=j) * tail
    return jac


# ---------------------------------------------------------------------------
# warped metric field
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetricData:
    """Metric components with exact first and second coordinate derivatives.

    g[i, j], dg[k, i, j] = d_k g_ij, ddg[k, l, i, j] = d_k d_l g_ij, all in
    chart order (t, phi_1, ..., phi_n).
    """

    g: np.ndarray
    dg: np.ndarray
    ddg: np.ndarray


@dataclass(frozen=True)
class MetricField:
    """Evaluator of the warped metric beta dt^2 + (alpha cosh t)^2 Omega_n."""

    profile: Profile
    n: int

    @property
    def dim(self) -> int:
        return self.n + 1

    def value(self, point: ChartPoint) -> np.ndarray:
        return self.evaluate(point).g

    def evaluate(self, point: ChartPoint, margin: float = CHART_MARGIN) -> MetricData:
        if point.n != self.n:
            raise ValueError(f"point has {point.n} angles, field expects {self.n}")
        point.require_interior(margin)
        dim = self.dim
        t = point.t

        a = eval_jet(self.profile, t)
        w = a * jet_var(t).cosh()          # warping radius alpha cosh t
        W0 = w.v * w.v                     # squared radius and its t-derivatives
        W1 = 2.0 * w.v * w.d1
        W2 = 2.0 * (w.d1 * w.d1 + w.v * w.d2)

        b0 = beta(self.profile, t)
        b1 = 2.0 * a.d1 * (a.d2 - a.v)
        # grouping keeps beta'' exactly 0 for profiles with d2 == v, d3 == d1
        b2 = 2.0 * ((a.d2 * a.d2 - a.d1 * a.d1) + (a.d1 * a.d3 - a.v * a.d2))

        g = np.zeros((dim, dim))
        dg = np.zeros((dim, dim, dim))
        ddg = np.zeros((dim, dim, dim, dim))
        g[0, 0] = b0
        dg[0, 0, 0] = b1
        ddg[0, 0, 0, 0] = b2

        # per-angle sin^2 factor and its two derivatives
        s0 = [math.sin(phi) ** 2 for phi in point.angles]
        s1 = [math.sin(2.0 * phi) for phi in point.angles]
        s2 = [2.0 * math.cos(2.0 * phi) for phi in point.angles]

        def product(upto: int, replace: dict[int, float]) -> float:
            acc = 1.0
            for k in range(upto):
                acc *= replace.get(k, s0[k])
            return acc

        for i in range(1, dim):
            ai = i - 1  # number of sin^2 factors in this component
            P = product(ai, {})
            g[i, i] = W0 * P
            dg[0, i, i] = W1 * P
            ddg[0, 0, i, i] = W2 * P
            for j in range(ai):
                dPj = product(ai, {j: s1[j]})
                dg[j + 1, i, i] = W0 * dPj
                ddg[0, j + 1, i, i] = ddg[j + 1, 0, i, i] = W1 * dPj
                ddg[j + 1, j + 1, i, i] = W0 * product(ai, {j: s2[j]})
                for k in range(j):
                    val = W0 * product(ai, {j: s1[j], k: s1[k]})
                    ddg[j + 1, k + 1, i, i] = ddg[k + 1, j + 1, i, i] = val
        return MetricData(g=g, dg=dg, ddg=ddg)


def warped_metric(profile: Profile, n: int,
                  psi_grid: GridSpec = GridSpec()) -> MetricField:
    """Metric field for an admissible profile; rejects profiles outside Psi."""
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    report = check_psi(profile, psi_grid.t_min, psi_grid.t_max, psi_grid.samples)
    if not report.in_psi:
        raise NotInPsi(
            f"{profile.family.value} profile is not admissible on "
            f"[{psi_grid.t_min}, {psi_grid.t_max}] (witness {report.witness_t0})")
    return MetricField(profile=profile, n=n)


# ---------------------------------------------------------------------------
# embedding into Minkowski space
# ---------------------------------------------------------------------------

def minkowski_form(x) -> float:
    """omega(x) = -(x^0)^2 + sum_i (x^i)^2."""
    x = np.asarray(x, dtype=float)
    return float(np.dot(x[1:], x[1:]) - x[0] * x[0])


def embed(profile: Profile, point: ChartPoint) -> np.ndarray:
    """Ambient coordinates (alpha sinh t, z alpha cosh t) of a chart point."""
    a = eval_jet(profile, point.t)
    z = hyperspherical_to_cartesian(point.angles)
    x = np.empty(point.n + 2)
    x[0] = a.v * math.sinh(point.t)
    x[1:] = z * (a.v * math.cosh(point.t))
    return x


def embedding_jacobian(profile: Profile, point: ChartPoint) -> np.ndarray:
    """Differential of embed, shape (n+2, n+1), by jet propagation per direction."""
    h = h_jet(profile, point.t)
    a = eval_jet(profile, point.t)
    w = a * jet_var(point.t).cosh()
    z = hyperspherical_to_cartesian(point.angles)
    dz = _sphere_jacobian(point.angles)
    jac = np.zeros((point.n + 2, point.n + 1))
    jac[0, 0] = h.d1
    jac[1:, 0] = z * w.d1
    jac[1:, 1:] = dz * w.v
    return jac


# beyond this |t| hyperbolic intermediates overflow; every profile's h has
# either saturated (bounded image) or exceeded any representable x0 by here
_HEIGHT_T_CAP = 690.0


def _invert_height(profile: Profile, x0: float) -> float:
    """Solve h(t) = x0; h is strictly increasing for admissible profiles."""
    if not math.isfinite(x0):
        raise OutOfRange(f"non-finite height coordinate {x0}")
    tol = 1e-12 * (1.0 + abs(x0))

    def height(t: float) -> float:
        # an overflowing intermediate means h has left the representable range
        try:
            return h_jet(profile, t).v
        except OverflowError:
            return math.copysign(math.inf, t)

    # bracket by doubling around the flat-profile initial guess
    alpha0 = eval_jet(profile, 0.0).v
    center = math.asinh(min(max(x0 / alpha0, -1e300), 1e300))
    half = 1.0
    lo = hi = center
    for _ in range(64):
        lo = max(center - half, -_HEIGHT_T_CAP)
        hi = min(center + half, _HEIGHT_T_CAP)
        if height(lo) <= x0 <= height(hi):
            break
        if lo == -_HEIGHT_T_CAP and hi == _HEIGHT_T_CAP:
            raise OutOfRange(f"x0={x0} is outside the image of h")
        half *= 2.0
    else:
        raise OutOfRange(f"x0={x0} is outside the image of h")

    # Newton with bisection safeguarding inside the bracket
    t = min(max(center, lo), hi)
    for _ in range(200):
        jet = h_jet(profile, t)
        res = jet.v - x0
        if abs(res) <= tol:
            return t
        if res > 0.0:
            hi = t
        else:
            lo = t
        if jet.d1 > 0.0 and math.isfinite(jet.d1):
            step = t - res / jet.d1
            t = step if lo < step < hi else 0.5 * (lo + hi)
        else:
            t = 0.5 * (lo + hi)
    raise OutOfRange(f"height inversion stalled near t={t} for x0={x0}")


def defining_residual(profile: Profile, x) -> float:
    """omega(x) - alpha(h^-1(x^0))^2; zero exactly on the hypersurface."""
    x = np.asarray(x, dtype=float)
    t = _invert_height(profile, float(x[0]))
    a = eval_jet(profile, t).v
    return minkowski_form(x) - a * a


def embed_inverse(profile: Profile, x,
                  surface_tol: float = 1e-8) -> ChartPoint:
    """Chart coordinates of an ambient point on the hypersurface.

    Recovers t by root finding on h, then reads the sphere direction from the
    remaining coordinates.  Rejects points whose defining residual exceeds
    surface_tol * (1 + |x|^2).
    """
    x = np.asarray(x, dtype=float)
    if len(x) < 3:
        raise ValueError("ambient point needs at least 3 coordinates")
    t = _invert_height(profile, float(x[0]))
    a = eval_jet(profile, t).v
    scale = 1.0 + float(np.dot(x, x))
    residual = minkowski_form(x) - a * a
    if abs(residual) > surface_tol * scale:
        raise NotOnSurface(
            f"defining residual {residual:.3e} exceeds {surface_tol:.1e} * {scale:.3e}")
    z = x[1:] / (a * math.cosh(t))
    return ChartPoint(t, cartesian_to_hyperspherical(z))


def pullback_check(profile: Profile, point: ChartPoint, u, v,
                   margin: float = CHART_MARGIN) -> tuple[float, float]:
    """Compare g(u, v) against eta(D_embed u, D_embed v) at a chart point.

    Equality of the two numbers is the computational content of the isometry
    between the chart metric and the induced ambient metric.
    """
    point.require_interior(margin)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    field = MetricField(profile=profile, n=point.n)
    g = field.evaluate(point, margin=margin).g
    g_uv = float(u @ g @ v)
    jac = embedding_jacobian(profile, point)
    pu = jac @ u
    pv = jac @ v
    eta_uv = float(np.dot(pu[1:], pv[1:]) - pu[0] * pv[0])
    return g_uv, eta_uv
