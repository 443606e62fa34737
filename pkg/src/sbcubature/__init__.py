"""Tensor-product cubature over planar regions bounded by segments and curves."""

from .curves import Bezier, Curve, ParametricCurve, RationalBezier, Segment, perp_product
from .errors import EvaluationError, InvalidArgumentError, NotFoundError
from .hni import HomogeneousField, hni_integrate, polygon_hni
from .region import CenterPolicy, CurvedTriangle, Region, decompose, is_star_convex, polygon, resolve_center
from .rules import Rule1D, Rule2D, gauss_jacobi_unit, gauss_legendre, tensor, tensor_points
from .sbc import (
    CubatureRule,
    PolygonEdgeData,
    edge_data,
    generate_rule,
    integrate,
    min_orders_curved,
    min_orders_polygon,
    sb_jacobian,
    sb_map,
)
from .singular import (
    GAUSS_JACOBI,
    GeneralizedSB,
    SingularSpec,
    SplitIntegrand,
    generate_singular_rule,
    gsb_jacobian,
    gsb_map,
    integrate_singular,
    radial_exponent,
    select_alpha,
    t_transform_bounds,
)
from .tmvi import (
    BoundaryLoop,
    EggCurve,
    egg_domain,
    exact_distance,
    lp_distance,
    relative_l2_error,
    tmvi_eval,
    tmvi_eval_many,
)

__version__ = "0.1.0"
