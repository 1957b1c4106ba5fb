"""Canonical forms of 2x2 complex matrices under *congruence.

Classification into the five canonical families, real codimension of the
classes, the closure order with constructive perturbation witnesses and
named obstruction certificates, and deterministic neighborhood sampling.
"""

__version__ = "0.1.0"

from .canonical import (
    AMBIG_FRACTION,
    ClassificationReport,
    classify,
    classify_many,
    is_star_congruent,
    random_congruence,
    to_hermitian_pair,
)
from .closure import (
    HasseSubgraph,
    codim_monotone_check,
    cone_distance,
    half_plane_ok,
    hasse_subgraph,
    in_cone,
    reachable,
    to_dot,
)
from .errors import (
    AmbiguousClassification,
    ArrowExists,
    CertificateNotFound,
    DegenerateDelta,
    DuplicateVertex,
    FormSyntaxError,
    InvalidInput,
    NoArrow,
    NotHermitian,
    SingularMatrix,
    StarcongError,
)
from .forms import (
    DELTA2,
    CanonicalForm,
    DeltaTau,
    Hyperbolic,
    UnitDirectZero,
    UnitPair,
    Zero,
    format_complex,
    format_form,
    forms_close,
    parse_complex,
    parse_form,
    realize,
)
from .linalg import (
    Inertia,
    adjoint,
    cosquare,
    eigenvalues2,
    inertia2,
    inverse2,
    real_rank,
    star_congruence,
)
from .perturb import (
    NeighborhoodReport,
    ObstructionCertificate,
    Witness,
    no_arrow_certificate,
    sample_neighborhood,
    witness,
    witness_refinement_check,
)
from .rng import SplitMix64, seeded_rng, substream_seed
from .stratify import VersalProfile, codimension, tangent_space_dim, versal_profile

__all__ = [
    "AMBIG_FRACTION",
    "AmbiguousClassification",
    "ArrowExists",
    "CanonicalForm",
    "CertificateNotFound",
    "ClassificationReport",
    "DELTA2",
    "DegenerateDelta",
    "DeltaTau",
    "DuplicateVertex",
    "FormSyntaxError",
    "HasseSubgraph",
    "Hyperbolic",
    "Inertia",
    "InvalidInput",
    "NeighborhoodReport",
    "NoArrow",
    "NotHermitian",
    "ObstructionCertificate",
    "SingularMatrix",
    "SplitMix64",
    "StarcongError",
    "UnitDirectZero",
    "UnitPair",
    "VersalProfile",
    "Witness",
    "Zero",
    "adjoint",
    "classify",
    "classify_many",
    "codim_monotone_check",
    "codimension",
    "cone_distance",
    "cosquare",
    "eigenvalues2",
    "format_complex",
    "format_form",
    "forms_close",
    "half_plane_ok",
    "hasse_subgraph",
    "in_cone",
    "inertia2",
    "inverse2",
    "is_star_congruent",
    "no_arrow_certificate",
    "parse_complex",
    "parse_form",
    "random_congruence",
    "reachable",
    "real_rank",
    "realize",
    "sample_neighborhood",
    "seeded_rng",
    "star_congruence",
    "substream_seed",
    "tangent_space_dim",
    "to_dot",
    "to_hermitian_pair",
    "versal_profile",
    "witness",
    "witness_refinement_check",
]
