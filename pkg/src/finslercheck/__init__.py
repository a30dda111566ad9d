"""Verification toolkit for spherically symmetric Finsler surfaces.

Computes sprays, Berwald and mean Berwald curvature (several independent
routes), Landsberg and flag curvature for the planar family with
``G^i = u P y^i + u^2 Q x^i``, and checks that the family spray is quadratic
in y while the scalar H does not vanish.
"""
from .errors import *  # noqa: F401,F403
from .params import ParamSet, a_of_r, load_params
from .expr import RadialExpr, parse, eval_expr, to_source
from .scalars import scalar_triple, identity_residuals
from .spray import FamilySpray, AnsatzSpray, spray_closed, quadratic_coeffs, extract_PQ, eval_PQ
from .metric import FamilyMetric, eval_F, fundamental_tensor, spray_from_metric
from .curvature import (
    berwald,
    mean_berwald_trace,
    h_scalars,
    e_closed_general,
    e_closed_H,
    e_family_dim2,
    landsberg,
    flag_curvature,
)

__version__ = "0.1.0"
