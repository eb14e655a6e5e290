"""Exact-arithmetic saturation and boundary-divisor analysis for surfaces."""

from .configuration import Configuration, CurveNode, Divisor, Restriction
from .elliptic import (
    ECPoint,
    HironakaReport,
    ObstructionReport,
    TorsionStatus,
    WeierstrassCurve,
    add,
    hironaka_build,
    is_torsion,
    negate,
    scalar_mul,
    sum_obstruction,
)
from .errors import (
    DataInconsistencyError,
    InputError,
    PreconditionError,
    SurfsatError,
)
from .fibres import (
    FalseFibreClaim,
    FibreTypeReport,
    FibreVerdict,
    GroupLawObstruction,
    NormalBundleNonTorsion,
    UserAsserted,
    check_disjoint_pair,
    classify_fibre_type,
    normal_bundle_certificate,
    proportionality,
    validate_false_fibre_claims,
    validate_zariski,
)
from .linalg import Rational, SymmetricMatrix, as_rational
from .mumford import (
    ContractedConfiguration,
    ContractionContext,
    contract,
    induced_product,
    pullback,
)
from .nslattice import (
    BlowupResult,
    ClassRecord,
    NSLattice,
    adjunction_genus,
    blowup,
    configuration_from_classes,
    projective_plane,
)
from .saturation import (
    AffDim,
    AffDimReport,
    CompactifiedSurface,
    SaturationPlan,
    SaturationVerdict,
    SchemeContractibility,
    SchemeSaturationReport,
    SchemeSaturationVerdict,
    affinisation_dimension,
    apply_plan,
    is_saturated,
    saturation_plan,
    scheme_saturation_check,
)

__version__ = "0.1.0"

__all__ = [
    "AffDim",
    "AffDimReport",
    "BlowupResult",
    "ClassRecord",
    "CompactifiedSurface",
    "Configuration",
    "ContractedConfiguration",
    "ContractionContext",
    "CurveNode",
    "DataInconsistencyError",
    "Divisor",
    "ECPoint",
    "FalseFibreClaim",
    "FibreTypeReport",
    "FibreVerdict",
    "GroupLawObstruction",
    "HironakaReport",
    "InputError",
    "NormalBundleNonTorsion",
    "NSLattice",
    "ObstructionReport",
    "PreconditionError",
    "Rational",
    "Restriction",
    "SaturationPlan",
    "SaturationVerdict",
    "SchemeContractibility",
    "SchemeSaturationReport",
    "SchemeSaturationVerdict",
    "SurfsatError",
    "SymmetricMatrix",
    "TorsionStatus",
    "UserAsserted",
    "WeierstrassCurve",
    "add",
    "adjunction_genus",
    "affinisation_dimension",
    "apply_plan",
    "as_rational",
    "blowup",
    "check_disjoint_pair",
    "classify_fibre_type",
    "configuration_from_classes",
    "contract",
    "hironaka_build",
    "induced_product",
    "is_saturated",
    "is_torsion",
    "negate",
    "normal_bundle_certificate",
    "projective_plane",
    "proportionality",
    "pullback",
    "saturation_plan",
    "scalar_mul",
    "scheme_saturation_check",
    "sum_obstruction",
    "validate_false_fibre_claims",
    "validate_zariski",
]
