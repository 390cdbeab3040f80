"""Generic numeric curvature engine for diagonal chart metrics.

Christoffel symbols come from the exact first metric derivatives, their
coordinate derivatives from the exact second metric derivatives, and the
Ricci tensor from

    R_mn = d_r Gamma^r_nm - d_n Gamma^r_rm
           + Gamma^r_rl Gamma^l_nm - Gamma^r_nl Gamma^l_rm.

A finite-difference route for d_Gamma is kept as an independent cross-check
of the exact-derivative path.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import DegenerateMetric
from .geometry import ChartPoint, MetricField
from .profiles import eval_jet

__all__ = [
    "CurvatureMethod", "CurvatureReport", "christoffel",
    "christoffel_with_derivatives", "ricci", "scalar_curvature",
    "einstein_residual", "ricci_fd_crosscheck", "curvature_report",
]

_DEGENERACY_FLOOR = 1e-12


class CurvatureMethod(str, Enum):
    JET_EXACT = "JetExact"
    FINITE_DIFFERENCE = "FiniteDifference"


@dataclass(frozen=True)
class CurvatureReport:
    """Curvature of one metric field at one point, with provenance."""

    christoffel: np.ndarray
    ricci: np.ndarray
    scalar: float
    einstein_residual: Optional[float]
    method: CurvatureMethod


def _metric_inverse(field: MetricField, point: ChartPoint, g: np.ndarray) -> np.ndarray:
    alpha = eval_jet(field.profile, point.t).v
    if abs(g[0, 0]) < _DEGENERACY_FLOOR * (1.0 + alpha * alpha):
        raise DegenerateMetric(
            f"g_tt = {g[0, 0]:.3e} at t={point.t}; the hypersurface is null here")
    diag = np.diag(g)
    if np.any(diag == 0.0) or abs(np.prod(diag)) == 0.0:
        raise DegenerateMetric(f"singular metric diagonal {diag}")
    if np.count_nonzero(g - np.diag(diag)) == 0:
        return np.diag(1.0 / diag)
    return np.linalg.inv(g)


def _gamma_from(ginv: np.ndarray, dg: np.ndarray) -> np.ndarray:
    # B[s, m, n] = d_m g_ns + d_n g_ms - d_s g_mn
    B = np.einsum("mns->smn", dg) + np.einsum("nms->smn", dg) - dg
    return 0.5 * np.einsum("rs,smn->rmn", ginv, B)


def christoffel(field: MetricField, point: ChartPoint) -> np.ndarray:
    """Gamma^r_mn at the point, shape (dim, dim, dim), symmetric in (m, n)."""
    data = field.evaluate(point)
    ginv = _metric_inverse(field, point, data.g)
    return _gamma_from(ginv, data.dg)


def christoffel_with_derivatives(field: MetricField,
                                 point: ChartPoint) -> tuple[np.ndarray, np.ndarray]:
    """Gamma and dGamma[k, r, m, n] = d_k Gamma^r_mn from exact metric jets."""
    data = field.evaluate(point)
    ginv = _metric_inverse(field, point, data.g)
    gamma = _gamma_from(ginv, data.dg)
    B = np.einsum("mns->smn", data.dg) + np.einsum("nms->smn", data.dg) - data.dg
    dB = (np.einsum("kmns->ksmn", data.ddg) + np.einsum("knms->ksmn", data.ddg)
          - np.einsum("ksmn->ksmn", data.ddg))
    dginv = -np.einsum("ra,kab,bs->krs", ginv, data.dg, ginv)
    dgamma = 0.5 * (np.einsum("krs,smn->krmn", dginv, B)
                    + np.einsum("rs,ksmn->krmn", ginv, dB))
    return gamma, dgamma


def _ricci_from(gamma: np.ndarray, dgamma: np.ndarray) -> np.ndarray:
    t1 = np.einsum("rrnm->mn", dgamma)
    t2 = np.einsum("nrrm->mn", dgamma)
    t3 = np.einsum("rrl,lnm->mn", gamma, gamma)
    t4 = np.einsum("rnl,lrm->mn", gamma, gamma)
    return t1 - t2 + t3 - t4


def ricci(field: MetricField, point: ChartPoint) -> np.ndarray:
    """Ricci tensor R_mn from exact Christoffel derivatives."""
    gamma, dgamma = christoffel_with_derivatives(field, point)
    return _ricci_from(gamma, dgamma)


def scalar_curvature(field: MetricField, point: ChartPoint) -> float:
    """S = g^mn R_mn."""
    data = field.evaluate(point)
    ginv = _metric_inverse(field, point, data.g)
    gamma = _gamma_from(ginv, data.dg)
    _, dgamma = christoffel_with_derivatives(field, point)
    ric = _ricci_from(gamma, dgamma)
    return float(np.einsum("mn,mn->", ginv, ric))


def einstein_residual(field: MetricField, point: ChartPoint,
                      lambda_const: float) -> float:
    """max |Ric - S g / 2 + Lambda g|; zero for a vacuum solution with this Lambda."""
    data = field.evaluate(point)
    ginv = _metric_inverse(field, point, data.g)
    gamma, dgamma = christoffel_with_derivatives(field, point)
    ric = _ricci_from(gamma, dgamma)
    scalar = float(np.einsum("mn,mn->", ginv, ric))
    resid = ric - 0.5 * scalar * data.g + lambda_const * data.g
    return float(np.max(np.abs(resid)))


def ricci_fd_crosscheck(field: MetricField, point: ChartPoint,
                        step: float = 1e-3) -> np.ndarray:
    """Ricci with central finite differences of Gamma replacing the exact d_Gamma."""
    if not 1e-4 <= step <= 1e-2:
        raise ValueError(f"step {step} outside [1e-4, 1e-2]")
    dim = field.dim
    gamma = christoffel(field, point)
    dgamma = np.zeros((dim, dim, dim, dim))
    coords = np.array([point.t, *point.angles])
    for k in range(dim):
        plus = coords.copy()
        minus = coords.copy()
        plus[k] += step
        minus[k] -= step
        gp = christoffel(field, ChartPoint(plus[0], tuple(plus[1:])))
        gm = christoffel(field, ChartPoint(minus[0], tuple(minus[1:])))
        dgamma[k] = (gp - gm) / (2.0 * step)
    return _ricci_from(gamma, dgamma)


def curvature_report(field: MetricField, point: ChartPoint,
                     lambda_const: Optional[float] = None,
                     method: CurvatureMethod = CurvatureMethod.JET_EXACT,
                     fd_step: float = 1e-3) -> CurvatureReport:
    """Bundle Christoffel, Ricci, scalar, and optional Einstein residual."""
    data = field.evaluate(point)
    ginv = _metric_inverse(field, point, data.g)
    gamma = _gamma_from(ginv, data.dg)
    if method is CurvatureMethod.JET_EXACT:
        _, dgamma = christoffel_with_derivatives(field, point)
        ric = _ricci_from(gamma, dgamma)
    else:
        ric = ricci_fd_crosscheck(field, point, step=fd_step)
    scalar = float(np.einsum("mn,mn->", ginv, ric))
    resid = None
    if lambda_const is not None:
        resid = float(np.max(np.abs(ric - 0.5 * scalar * data.g
                                    + lambda_const * data.g)))
    return CurvatureReport(christoffel=gamma, ricci=ric, scalar=scalar,
                           einstein_residual=resid, method=method)
