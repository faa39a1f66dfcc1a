"""Exact tools for degree-4 genus-2 maps to the plane: boundary-family
bookkeeping, Gorenstein singularity models, and smoothability decisions.

Everything computes over the rationals — no floats, no tolerances.
"""

from .components import (
    BrE,
    ComponentFamily,
    D,
    DualGraph,
    E,
    EE,
    FamilySpecError,
    GraphVertex,
    HypD,
    Main,
    OutOfRegimeError,
    dimension,
    enumerate_families,
    format_family,
    generic_dual_graph,
    hyperelliptic_cover_dimension,
    is_degenerate_bridge,
    parse_family,
    partitions,
    reduction_target,
    virtual_dimension,
)
from .hyperelliptic import (
    CurvePoint,
    HyperellipticCurve,
    PointNotOnCurve,
    are_conjugate,
    hyperelliptic_image,
    involution,
    is_weierstrass,
)
from .instances import InstancePayloadError, load_instance, loads_instance
from .markers import INFINITY
from .polynomials import Polynomial, resultant
from .projective import (
    Conic2,
    DegenerateConfiguration,
    IncidenceError,
    ProjLine2,
    ProjPoint,
    cross_ratio,
    directions_span_dimension,
    line_intersection,
    line_tangent_to_conic,
    line_through,
    pencil_coordinate,
    tangency_point,
)
from .series import MultiBranchElement, TruncatedSeries, TruncationMismatch
from .singularities import (
    GermSignature,
    GorensteinPresentation,
    PlanarBranch,
    SingularityType,
    UnclassifiedGermError,
    classify_germ,
    germ_signature,
    intersection_multiplicity,
    parse_singularity_label,
    presentation_residues,
    ribbon_genus,
    tailed_ribbon_local_ideal,
    type_I_presentation,
    type_II_presentation,
    verify_presentation,
)
from .smoothability import (
    AttachPoint,
    CoveredLine,
    ImageData,
    InstanceValidationError,
    IntersectionComponent,
    IntersectionRecord,
    MarkedModuli,
    SmoothabilityInstance,
    TangentConfiguration,
    Verdict,
    cross_ratio_match,
    cross_ratio_permutation_sweep,
    decide,
    genus1_tails_condition,
    intersection_catalog,
    intersection_dimension_from_strata,
    ribbon_descent_condition,
    section_descent_codim,
    unobstructed_isolated,
)
from .strata import (
    PINNED_DEVIATIONS,
    QUARTIC_SYSTEM_DIMENSION,
    UNSUPPORTED,
    CodimDiagnostic,
    StratumRecord,
    codim_diagnostic,
    deviating_rows,
    lookup,
    strata_table,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
