"""Seshadri constants of ample line bundles on hyperelliptic surfaces, computed exactly."""

from .closedform import (
    DEFAULT_DELTA,
    Genus,
    Kind,
    PointClass,
    PointKind,
    SeshadriEstimate,
    delta_feasibility,
    epsilon_at_point,
    epsilon_min,
    epsilon_one,
    max_feasible_delta,
)
from .errors import DomainError, NotAmpleError, SeshadriError
from .exactnum import ExactValue, Ordering, compare, make_rational, make_surd, parse_exact, to_decimal
from .numlattice import (
    SURFACES,
    DivisorClass,
    SurfaceType,
    fibre_classes,
    intersect,
    is_ample,
    is_effective_vertical,
    surface_params,
)
from .oracle import CurveCandidate, OracleReport, certify_point, cross_check_region
from .pell import ExcSet, PellSolution, compare_bounds, exc_membership, fsst_lower_bound, pell_fundamental

__version__ = "0.1.0"
