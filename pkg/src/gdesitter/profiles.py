"""Profile functions alpha(t) and their admissibility / causal classification.

A profile is a smooth positive function alpha(t).  It generates a hypersurface
in Minkowski space whose induced geometry is the warped product

    beta(t) dt^2 + (alpha(t) cosh t)^2 * Omega_n,      beta = (alpha')^2 - alpha^2,

provided h(t) = alpha(t) sinh t has a nowhere-vanishing derivative.  Six
built-in families are supported (see ``Family``); the classification grid
checks are semi-decisions over a bounded sample grid, refined by bisection.

Numerical notes
---------------
Several acceptance quantities decay like sech^2(t) ~ 8e-9 or rho(t)^2 ~ 1e-17
at the edges of the default grid [-10, 10].  Naive evaluation through jets
destroys their sign, so each family provides two cancellation-free scalar
channels next to its jet:

* ``growth_excess``  alpha'/alpha - 1, computed without tanh saturation;
* ``psi_factor``     a positive multiple of h'(t), the monotonicity witness.

beta is assembled from the excess as (v*ex) * (v*ex + 2v), and causal kinds
are decided on the scale-free ratio beta/alpha^2 = ex*(ex + 2) so the verdict
does not depend on the overall size of alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import InvalidGrid, NonPositiveProfile, NotInPsi, QuadratureFailure
from .jets import Jet3, jet_const, jet_var

__all__ = [
    "Family", "Profile", "GridSpec", "PsiReport", "CausalKind", "CausalCharacter",
    "eval_jet", "h_jet", "beta", "check_psi", "classify", "detect_null_form",
    "check_spacelike_conditions", "check_limit_ratio", "nocontraction_inequality",
    "parse_profile", "format_profile",
]

# Grid defaults for "for all t" semi-decisions.
DEFAULT_T_MIN = -10.0
DEFAULT_T_MAX = 10.0
DEFAULT_SAMPLES = 2001
DEFAULT_TOL = 1e-9

# |alpha'|/alpha - 1 margin below which the strict-inequality class is refused.
PSI_HAT_MARGIN = 1e-9

# Bump channels are flushed to exactly zero at or below this t; the true values
# there are < exp(-10000), far below double precision resolution.
BUMP_FLUSH_T = 1e-2

_QUAD_EPSABS = 1e-12
_QUAD_NODE_STEP = 0.25
_QUAD_NODE_SPAN = 16.0


class Family(str, Enum):
    """Built-in profile families; values double as mini-grammar keywords."""

    CONSTANT = "constant"
    EXP = "exp"
    COSH = "cosh"
    SECH = "sech"
    SPACELIKE311 = "spacelike311"
    NOCONTRACT = "nocontract"


def _bump_jet(t: float) -> Jet3:
    """Jet of the smooth bump exp(-1/t^2) for t > 0, identically 0 for t <= 0."""
    if t <= BUMP_FLUSH_T:
        return jet_const(0.0)
    tj = jet_var(t)
    return (jet_const(-1.0) / (tj * tj)).exp()


def _rho311(t: float) -> float:
    """The boost term 2 e^t / (e^-t + e^t); positive, monotone, limits 0 and 2."""
    ep, en = math.exp(t), math.exp(-t)
    return 2.0 * ep / (en + ep)


def _rho311_jet(t: float) -> Jet3:
    tj = jet_var(t)
    ep, en = tj.exp(), (-tj).exp()
    return (2.0 * ep) / (en + ep)


class _Antiderivative:
    """Cached antiderivative of a 1-d integrand, anchored at 0.

    Node values are accumulated segment by segment with adaptive Gauss-Kronrod
    quadrature; an evaluation integrates only the short tail from the nearest
    node.  Built eagerly so the owning Profile stays immutable and shareable.
    """

    def __init__(self, integrand, span=_QUAD_NODE_SPAN, step=_QUAD_NODE_STEP):
        self._f = integrand
        count = int(round(span / step))
        self._nodes = np.linspace(-span, span, 2 * count + 1)
        values = np.zeros_like(self._nodes)
        zero = count  # index of node t = 0
        for i in range(zero + 1, len(self._nodes)):
            values[i] = values[i - 1] + self._segment(self._nodes[i - 1], self._nodes[i])
        for i in range(zero - 1, -1, -1):
            values[i] = values[i + 1] - self._segment(self._nodes[i], self._nodes[i + 1])
        self._values = values

    def _segment(self, a: float, b: float) -> float:
        val, err, info = quad(self._f, a, b, epsabs=_QUAD_EPSABS, epsrel=1e-12,
                              full_output=True)[:3]
        if err > 1e-9 * (1.0 + abs(val)):
            raise QuadratureFailure(
                f"quadrature on [{a}, {b}] reported error {err:.3e}")
        return val

    def __call__(self, t: float) -> float:
        if not math.isfinite(t):
            raise QuadratureFailure(f"non-finite integration endpoint {t}")
        idx = int(np.searchsorted(self._nodes, t, side="right")) - 1
        idx = min(max(idx, 0), len(self._nodes) - 1)
        node = self._nodes[idx]
        base = self._values[idx]
        if t == node:
            return float(base)
        return float(base + self._segment(node, t))


@dataclass(frozen=True)
class Profile:
    """An immutable profile alpha(t); construct through the factory methods."""

    family: Family
    r: float = 1.0
    lam: float = 0.0
    _antideriv: Optional[_Antiderivative] = field(
        default=None, compare=False, repr=False)

    # -- factories -----------------------------------------------------------
    @staticmethod
    def constant(r: float) -> "Profile":
        _require_radius(r)
        return Profile(Family.CONSTANT, r=float(r))

    @staticmethod
    def exponential(r: float, lam: float) -> "Profile":
        _require_radius(r)
        if not math.isfinite(lam):
            raise ValueError("lambda must be finite")
        return Profile(Family.EXP, r=float(r), lam=float(lam))

    @staticmethod
    def cosh(r: float) -> "Profile":
        _require_radius(r)
        return Profile(Family.COSH, r=float(r))

    @staticmethod
    def sech(r: float) -> "Profile":
        _require_radius(r)
        return Profile(Family.SECH, r=float(r))

    @staticmethod
    def spacelike311() -> "Profile":
        cache = _Antiderivative(lambda s: 1.0 + _rho311(s))
        return Profile(Family.SPACELIKE311, r=1.0, _antideriv=cache)

    @staticmethod
    def nocontract(r: float = 2.4) -> "Profile":
        _require_radius(r)
        profile = Profile(Family.NOCONTRACT, r=float(r))
        # the constant r is an existence witness; re-verify it actually keeps
        # the hypersurface timelike over the default grid
        for t in np.linspace(DEFAULT_T_MIN, DEFAULT_T_MAX, DEFAULT_SAMPLES):
            if beta(profile, float(t)) >= 0.0:
                raise ValueError(
                    f"nocontract radius r={r} fails beta < 0 at t={t:.4f}")
        return profile


def _require_radius(r: float) -> None:
    if not (math.isfinite(r) and r > 0.0):
        raise ValueError(f"radius must be positive and finite, got {r}")


# ---------------------------------------------------------------------------
# evaluation channels
# ---------------------------------------------------------------------------

def eval_jet(profile: Profile, t: float) -> Jet3:
    """Jet (alpha, alpha', alpha'', alpha''') at t.  alpha must come out positive."""
    t = float(t)
    if not math.isfinite(t):
        raise ValueError(f"profile evaluation at non-finite t={t}")
    fam = profile.family
    if fam is Family.CONSTANT:
        jet = jet_const(profile.r)
    elif fam is Family.EXP:
        v = profile.r * math.exp(profile.lam * t)
        d1 = profile.lam * v
        d2 = profile.lam * d1
        jet = Jet3(v, d1, d2, profile.lam * d2)
    elif fam is Family.COSH:
        jet = profile.r * jet_var(t).cosh()
    elif fam is Family.SECH:
        jet = jet_const(profile.r) / jet_var(t).cosh()
    elif fam is Family.SPACELIKE311:
        zeta = 1.0 + _rho311_jet(t)
        integral = profile._antideriv(t)
        jet = Jet3(integral, zeta.v, zeta.d1, zeta.d2).exp()
    elif fam is Family.NOCONTRACT:
        jet = _bump_jet(t) + jet_const(profile.r) / jet_var(t).cosh()
    else:  # pragma: no cover
        raise ValueError(f"unknown family {fam}")
    if not jet.v > 0.0:
        raise NonPositiveProfile(
            f"{fam.value} profile evaluated to {jet.v} at t={t}")
    return jet


def growth_excess(profile: Profile, t: float) -> float:
    """alpha'(t)/alpha(t) - 1, evaluated without catastrophic cancellation.

    tanh saturates to 1.0 in double precision near |t| ~ 19, so families whose
    log-derivative approaches +-1 use exp ratios instead.
    """
    fam = profile.family
    if fam is Family.CONSTANT:
        return -1.0
    if fam is Family.EXP:
        return profile.lam - 1.0
    if fam is Family.COSH:
        # tanh t - 1 = -e^(-t)/cosh t
        return -math.exp(-t) / math.cosh(t)
    if fam is Family.SECH:
        # -tanh t - 1 = -e^t/cosh t
        return -math.exp(t) / math.cosh(t)
    if fam is Family.SPACELIKE311:
        return _rho311(t)
    if fam is Family.NOCONTRACT:
        m = _bump_jet(t)
        c = math.cosh(t)
        diff = (m.d1 - m.v) - profile.r * math.exp(t) / (c * c)
        return diff / (m.v + profile.r / c)
    raise ValueError(f"unknown family {fam}")  # pragma: no cover


def psi_factor(profile: Profile, t: float) -> float:
    """A positive multiple of h'(t) = alpha' sinh t + alpha cosh t.

    Used as the sign witness for the admissibility check.  The generic form is
    h'/(alpha cosh t) = (1 + tanh t) + excess * tanh t; the spacelike family
    overrides it because its witness decays like rho(t)^2 ~ 1e-17 at t = -10,
    below what any tanh-based expression can resolve.
    """
    if profile.family is Family.SPACELIKE311:
        # h'/(alpha cosh t) * cosh t = e^t + rho sinh t, all addends accurate
        return math.exp(t) + _rho311(t) * math.sinh(t)
    w = math.tanh(t)
    return (1.0 + w) + growth_excess(profile, t) * w


def h_jet(profile: Profile, t: float) -> Jet3:
    """Jet of h(t) = alpha(t) sinh t, the height function of the embedding."""
    return eval_jet(profile, t) * jet_var(t).sinh()


def beta(profile: Profile, t: float) -> float:
    """(alpha')^2 - alpha^2 at t, in the factored form (a'-a)(a'+a).

    The cosh family is the one case whose beta is held exactly at -r^2 by an
    algebraic identity invisible to rounded jets (error ~1e-8 r^2 at t = 10),
    so it evaluates the identity's factored residue directly.
    """
    if profile.family is Family.COSH:
        return -(profile.r * profile.r) * (math.exp(t) * math.exp(-t))
    v = eval_jet(profile, t).v
    u = v * growth_excess(profile, t)
    return u * (u + 2.0 * v)


def causal_ratio(profile: Profile, t: float) -> float:
    """beta/alpha^2 = (alpha'/alpha)^2 - 1; scale-free causal sign witness."""
    ex = growth_excess(profile, t)
    return ex * (ex + 2.0)


# ---------------------------------------------------------------------------
# grid reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    """Uniform sampling grid for the "for all t" semi-decisions."""

    t_min: float = DEFAULT_T_MIN
    t_max: float = DEFAULT_T_MAX
    samples: int = DEFAULT_SAMPLES

    def points(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.samples)


@dataclass(frozen=True)
class PsiReport:
    """Outcome of the admissibility scan over a grid."""

    in_psi: bool
    in_psi_hat: bool
    witness_t0: Optional[float]
    grid: GridSpec


class CausalKind(str, Enum):
    TIMELIKE = "Timelike"
    NULL = "Null"
    SPACELIKE = "Spacelike"
    MIXED = "Mixed"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class CausalCharacter:
    """Causal verdict plus the raw extrema of beta over the sample grid."""

    kind: CausalKind
    beta_min: float
    beta_max: float


def _validate_grid(t_min: float, t_max: float, samples: int) -> GridSpec:
    if not (math.isfinite(t_min) and math.isfinite(t_max) and t_min < t_max):
        raise InvalidGrid(f"bad grid bounds [{t_min}, {t_max}]")
    if samples < 3:
        raise InvalidGrid(f"need at least 3 samples, got {samples}")
    return GridSpec(float(t_min), float(t_max), int(samples))


def check_psi(profile: Profile, t_min: float = DEFAULT_T_MIN,
              t_max: float = DEFAULT_T_MAX,
              samples: int = DEFAULT_SAMPLES) -> PsiReport:
    """Scan h' for sign changes or exact zeros, and the strict |alpha'| != alpha margin.

    A detected sign change is refined by bracketed root finding; the refined
    witness satisfies |h'(t0)| <= 1e-8 (1 + |h(t0)|).  Tangential zeros that
    never flip the sign of h' are invisible to any finite grid and are not
    claimed to be detected.
    """
    grid = _validate_grid(t_min, t_max, samples)
    ts = grid.points()
    sigma = np.array([psi_factor(profile, float(t)) for t in ts])

    in_psi = True
    witness: Optional[float] = None
    if np.any(sigma == 0.0):
        in_psi = False
        witness = float(ts[int(np.argmax(sigma == 0.0))])
    else:
        flips = np.nonzero(np.sign(sigma[:-1]) != np.sign(sigma[1:]))[0]
        if flips.size:
            in_psi = False
            i = int(flips[0])
            witness = float(brentq(lambda s: psi_factor(profile, s),
                                   float(ts[i]), float(ts[i + 1]),
                                   xtol=1e-14, rtol=8.9e-16))

    in_psi_hat = in_psi
    if in_psi:
        for t in ts:
            ex = growth_excess(profile, float(t))
            margin = abs(1.0 + ex) - 1.0
            if abs(margin) <= PSI_HAT_MARGIN:
                in_psi_hat = False
                if witness is None:
                    witness = float(t)
                break
    return PsiReport(in_psi=in_psi, in_psi_hat=in_psi_hat,
                     witness_t0=witness, grid=grid)


def classify(profile: Profile, t_min: float = DEFAULT_T_MIN,
             t_max: float = DEFAULT_T_MAX, samples: int = DEFAULT_SAMPLES,
             tol: float = DEFAULT_TOL) -> CausalCharacter:
    """Causal character from the sign pattern of beta over the grid.

    The kind is decided on the normalized ratio beta/alpha^2 against tol, so a
    profile that merely becomes small (sech at |t|=10 has |beta| ~ 7e-17 while
    beta/alpha^2 = -sech^2 ~ -8e-9) is still recognized.  Raw beta extrema are
    reported alongside.
    """
    report = check_psi(profile, t_min, t_max, samples)
    if not report.in_psi:
        raise NotInPsi(
            f"{profile.family.value} profile leaves the admissible class "
            f"(witness t0={report.witness_t0})")
    ts = GridSpec(t_min, t_max, samples).points()
    ratios = np.array([causal_ratio(profile, float(t)) for t in ts])
    betas = np.array([beta(profile, float(t)) for t in ts])
    kind = _kind_from_ratios(ratios, tol)
    return CausalCharacter(kind=kind, beta_min=float(betas.min()),
                           beta_max=float(betas.max()))


def _kind_from_ratios(ratios: np.ndarray, tol: float) -> CausalKind:
    """Sign-pattern trichotomy with a dead zone of width tol around zero."""
    hi = float(ratios.max())
    lo = float(ratios.min())
    if max(abs(hi), abs(lo)) <= tol:
        return CausalKind.NULL
    if hi < -tol:
        return CausalKind.TIMELIKE
    if lo > tol:
        return CausalKind.SPACELIKE
    if lo < -tol and hi > tol:
        return CausalKind.MIXED
    return CausalKind.INDETERMINATE


def detect_null_form(profile: Profile, t_min: float = -5.0, t_max: float = 5.0,
                     samples: int = 201,
                     residual_tol: float = 1e-10) -> Optional[tuple[float, int]]:
    """Recover (r, eps) if alpha = r e^(eps t) with eps = +-1, else None.

    Works by fitting log alpha against t; a profile qualifies only if the
    affine fit with slope forced to +-1 leaves a residual below residual_tol.
    """
    ts = np.linspace(t_min, t_max, samples)
    logs = np.array([math.log(eval_jet(profile, float(t)).v) for t in ts])
    slope, intercept = np.polyfit(ts, logs, 1)
    eps = int(round(slope))
    if eps not in (-1, 1):
        return None
    resid = np.max(np.abs(logs - (intercept + eps * ts)))
    if resid > residual_tol:
        return None
    return (math.exp(intercept), eps)


def check_spacelike_conditions(profile: Profile, t_min: float = DEFAULT_T_MIN,
                               t_max: float = DEFAULT_T_MAX,
                               samples: int = DEFAULT_SAMPLES) -> bool:
    """True iff (alpha'/alpha) tanh t > -1 and alpha'/alpha > 1 strictly on the grid."""
    grid = _validate_grid(t_min, t_max, samples)
    for t in grid.points():
        t = float(t)
        if not (psi_factor(profile, t) > 0.0 and growth_excess(profile, t) > 0.0):
            return False
    return True


def check_limit_ratio(profile: Profile, t_probe: float) -> float:
    """alpha/alpha' at a probe point; diverging profiles tend to +-1 at infinity."""
    jet = eval_jet(profile, t_probe)
    if jet.d1 == 0.0:
        raise ZeroDivisionError(f"alpha'({t_probe}) = 0, ratio undefined")
    return jet.v / jet.d1


def nocontraction_inequality(r: float, t: float) -> float:
    """mu'(t) - mu(t) tanh t - 2 r tanh t / cosh t, nonpositive for a valid radius."""
    if not t > 0.0:
        raise ValueError("inequality is only meaningful for t > 0")
    m = _bump_jet(t)
    return m.d1 - m.v * math.tanh(t) - 2.0 * r * math.tanh(t) / math.cosh(t)


# ---------------------------------------------------------------------------
# mini-grammar
# ---------------------------------------------------------------------------

_GRAMMAR_PARAMS = {
    Family.CONSTANT: ("r",),
    Family.EXP: ("r", "lambda"),
    Family.COSH: ("r",),
    Family.SECH: ("r",),
    Family.SPACELIKE311: (),
    Family.NOCONTRACT: ("r",),
}

_GRAMMAR_DEFAULTS = {Family.NOCONTRACT: {"r": 2.4}}


def parse_profile(spec: str) -> Profile:
    """Parse a profile spec like ``exp:r=1,lambda=0.5`` or ``spacelike311``."""
    spec = spec.strip()
    head, _, tail = spec.partition(":")
    try:
        family = Family(head)
    except ValueError:
        raise ValueError(f"unknown profile family {head!r}") from None
    wanted = _GRAMMAR_PARAMS[family]
    params = dict(_GRAMMAR_DEFAULTS.get(family, {}))
    if tail:
        for item in tail.split(","):
            key, eq, value = item.partition("=")
            key = key.strip()
            if not eq or key not in wanted:
                raise ValueError(f"bad parameter {item!r} for family {head!r}")
            try:
                params[key] = float(value)
            except ValueError:
                raise ValueError(f"non-numeric value in {item!r}") from None
    missing = [k for k in wanted if k not in params]
    if missing:
        raise ValueError(f"family {head!r} needs parameters {missing}")
    if family is Family.CONSTANT:
        return Profile.constant(params["r"])
    if family is Family.EXP:
        return Profile.exponential(params["r"], params["lambda"])
    if family is Family.COSH:
        return Profile.cosh(params["r"])
    if family is Family.SECH:
        return Profile.sech(params["r"])
    if family is Family.SPACELIKE311:
        return Profile.spacelike311()
    return Profile.nocontract(params["r"])


def format_profile(profile: Profile) -> str:
    """Canonical spec string; parse . format is idempotent."""
    parts = []
    for key in _GRAMMAR_PARAMS[profile.family]:
        value = profile.lam if key == "lambda" else profile.r
        parts.append(f"{key}={value!r}")
    if not parts:
        return profile.family.value
    return profile.family.value + ":" + ",".join(parts)
