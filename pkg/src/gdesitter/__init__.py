"""Generalized de Sitter hypersurfaces in Minkowski space.

Profile admissibility and causal classification, the induced warped-product
metric on R x S^n, the explicit embedding and its inverse, closed-form
curvature references for the exponential family, and a generic numeric
curvature engine validated against them.
"""

from .errors import (DegenerateMetric, GdsError, InvalidGrid, NonPositiveProfile,
                     NotInPsi, NotOnSurface, OutOfChart, OutOfRange,
                     QuadratureFailure)
from .jets import Jet3, jet_const, jet_var
from .profiles import (CausalCharacter, CausalKind, Family, GridSpec, Profile,
                       PsiReport, beta, causal_ratio, check_limit_ratio,
                       check_psi, check_spacelike_conditions, classify,
                       detect_null_form, eval_jet, format_profile, h_jet,
                       nocontraction_inequality, parse_profile)
from .geometry import (CHART_MARGIN, ChartPoint, MetricData, MetricField,
                       cartesian_to_hyperspherical, defining_residual, embed,
                       embed_inverse, embedding_jacobian,
                       hyperspherical_to_cartesian, minkowski_form,
                       pullback_check, round_metric, warped_metric)
from .curvature import (CurvatureMethod, CurvatureReport, christoffel,
                        christoffel_with_derivatives, curvature_report,
                        einstein_residual, ricci, ricci_fd_crosscheck,
                        scalar_curvature)
from .oracles import (ClosedForm4D, DeSitterReference, christoffel_closed,
                      desitter_lambda, desitter_ricci, f_lambda, metric_closed,
                      q_lambda, ricci_closed, scalar_closed)

__version__ = "0.1.0"
