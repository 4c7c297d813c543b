"""Exact computer algebra on (1|1)-dimensional complex superspace.

Grassmann-number arithmetic over Gaussian rationals, superfields and their
derivative operators, superanalytic coordinate maps with their superconformal
and twist-parity reductions, Berezinian calculus, and a property-based
verification harness that checks every implemented identity over random
instances with exact equality.
"""

from .errors import (
    AlgebraMismatch,
    BerezinianDoesNotExist,
    NotInvertible,
    ParityError,
    UndefinedSpinProduct,
)
from .grassmann import GaussianRational, GrassmannNumber, Parity, random_element
from .polynomials import ComponentFunction, RationalComponent, compose_all
from .superfields import D, Superfield, TangentMatrix, partial_theta, partial_z
from .transforms import (
    BerezinianClass,
    InvertibilityTest,
    MatrixProjection,
    ReducedPair,
    ReductionConditions,
    ReductionKind,
    SuperanalyticMap,
    berezinian_closed_form,
    build_reduced,
    classify_berezinian,
    compose,
    conformal_jacobian,
    coordinate_superfields,
    d_theta_tilde,
    identity_map,
    mixed_cocycle_holds,
    partial_theta_tilde,
    projected_tangent_matrix,
    pullback,
    pullback_matrix,
    reduction_conditions,
    reduction_kind,
    standard_cocycle_holds,
    star,
    tangent_matrix,
    twist_berezinian_forms,
)
from .verification import (
    CheckConfig,
    CheckOutcome,
    CheckReport,
    REGISTRY,
    random_map,
    render_report_text,
    report_to_dict,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraMismatch",
    "BerezinianClass",
    "BerezinianDoesNotExist",
    "CheckConfig",
    "CheckOutcome",
    "CheckReport",
    "ComponentFunction",
    "D",
    "GaussianRational",
    "GrassmannNumber",
    "InvertibilityTest",
    "MatrixProjection",
    "NotInvertible",
    "Parity",
    "ParityError",
    "RationalComponent",
    "REGISTRY",
    "ReducedPair",
    "ReductionConditions",
    "ReductionKind",
    "Superfield",
    "SuperanalyticMap",
    "TangentMatrix",
    "UndefinedSpinProduct",
    "berezinian_closed_form",
    "build_reduced",
    "classify_berezinian",
    "compose",
    "compose_all",
    "conformal_jacobian",
    "coordinate_superfields",
    "d_theta_tilde",
    "identity_map",
    "mixed_cocycle_holds",
    "partial_theta",
    "partial_theta_tilde",
    "partial_z",
    "projected_tangent_matrix",
    "pullback",
    "pullback_matrix",
    "random_element",
    "random_map",
    "reduction_conditions",
    "reduction_kind",
    "render_report_text",
    "report_to_dict",
    "run_suite",
    "standard_cocycle_holds",
    "star",
    "tangent_matrix",
    "twist_berezinian_forms",
]
