"""Closed-form terms, orthogeodesic enumeration and identity checks
for graded hyperbolic surfaces."""

from .errors import (
    AmbiguousGeometry,
    BudgetExceeded,
    DomainError,
    GeometryError,
    Inconclusive,
    OrthosumError,
)
from .dilog import dilog, dilog_mp, rogers_L, rogers_mp
from .hgeom import (
    BoundaryEnd,
    GeodesicUHP,
    HoroballSpec,
    MoebiusMap,
    collar_radius,
    gamma_length_from_trunc,
    pants_seams,
    trifor_chain,
)
from .terms import (
    PantsGeometry,
    TermValue,
    br_term,
    cone_ab,
    f_delta,
    h_of_pants,
    lasso_cone,
    lasso_cusp,
    lasso_geodesic,
    phi,
    phi_decomposed,
    phi_lower_bound,
    unit_tangent_volume,
)
from .oracles import (
    CheckReport,
    QuadratureResult,
    f_delta_integral,
    lasso_cone_integral,
    lasso_cusp_integral,
    sample_lemma_checks,
)
from .spectra import (
    CountingRow,
    FuchsianSurface,
    IdentityReport,
    OrthoClass,
    basmajian_sum,
    bridgeman_sum,
    composite_words,
    counting_check,
    enumerate_double_cosets,
    identity_partial_sum,
    in_concave_core,
    model_realization_check,
    pants_group,
    prime_sieve,
    thrice_punctured_sphere,
    trace_gamma_length,
    truncated_length,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousGeometry",
    "BoundaryEnd",
    "BudgetExceeded",
    "CheckReport",
    "CountingRow",
    "DomainError",
    "FuchsianSurface",
    "GeodesicUHP",
    "GeometryError",
    "HoroballSpec",
    "IdentityReport",
    "Inconclusive",
    "MoebiusMap",
    "OrthoClass",
    "OrthosumError",
    "PantsGeometry",
    "QuadratureResult",
    "TermValue",
    "basmajian_sum",
    "br_term",
    "bridgeman_sum",
    "collar_radius",
    "composite_words",
    "cone_ab",
    "counting_check",
    "dilog",
    "dilog_mp",
    "enumerate_double_cosets",
    "f_delta",
    "f_delta_integral",
    "gamma_length_from_trunc",
    "h_of_pants",
    "identity_partial_sum",
    "in_concave_core",
    "lasso_cone",
    "lasso_cone_integral",
    "lasso_cusp",
    "lasso_cusp_integral",
    "lasso_geodesic",
    "model_realization_check",
    "pants_group",
    "pants_seams",
    "phi",
    "phi_decomposed",
    "phi_lower_bound",
    "prime_sieve",
    "rogers_L",
    "rogers_mp",
    "sample_lemma_checks",
    "thrice_punctured_sphere",
    "trace_gamma_length",
    "trifor_chain",
    "truncated_length",
    "unit_tangent_volume",
]
