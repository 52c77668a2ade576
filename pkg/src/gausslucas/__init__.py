"""Critical points of complex polynomials seen as zeros of a 2-D electric field."""

from .electrostatics import (
    ChargeConfiguration,
    FieldVector,
    GaussLucasReport,
    critical_points,
    field,
    field_via_log_derivative,
    gauss_lucas_report,
    potential,
)
from .errors import (
    DegenerateTriangle,
    GaussLucasError,
    IoFailure,
    NonConvergence,
    NotSeparable,
    PoleAtChargeLocation,
    StalledAtCriticalPoint,
    TooFewSamples,
)
from .geometry import Hull, Witness, contains, convex_hull, diameter, separating_direction
from .marden import Ellipse, ellipse_area, on_boundary, steiner_inellipse, tangency_check
from .poly import Polynomial, RootSet, derivative, evaluate, from_roots, log_derivative
from .roots import SolveReport, SolverConfig, cauchy_bound, find_roots, refine_root

__version__ = "0.1.0"

__all__ = [
    "ChargeConfiguration",
    "DegenerateTriangle",
    "Ellipse",
    "FieldVector",
    "GaussLucasError",
    "GaussLucasReport",
    "Hull",
    "IoFailure",
    "NonConvergence",
    "NotSeparable",
    "PoleAtChargeLocation",
    "Polynomial",
    "RootSet",
    "SolveReport",
    "SolverConfig",
    "StalledAtCriticalPoint",
    "TooFewSamples",
    "Witness",
    "cauchy_bound",
    "contains",
    "convex_hull",
    "critical_points",
    "derivative",
    "diameter",
    "ellipse_area",
    "evaluate",
    "field",
    "field_via_log_derivative",
    "find_roots",
    "from_roots",
    "gauss_lucas_report",
    "log_derivative",
    "on_boundary",
    "potential",
    "refine_root",
    "separating_direction",
    "steiner_inellipse",
    "tangency_check",
]
