"""Exact certificates for multiplication tensors over finite field towers.

The package builds finite field towers with deterministic moduli,
constructs multiplication structure tensors, computes exact analytic
rank by slice-kernel counting, produces machine-checkable rank and
subrank certificates (evaluation/interpolation at rational points,
tower composition, degree-shift restrictions), and mechanically checks
the surrounding proof arithmetic at desk scale.
"""

from .analytic import ARValue, ExactBias, analytic_rank, bias, bias_via_characters
from .certificates import (
    RankDecomposition,
    RestrictionCertificate,
    verify_decomposition,
    verify_restriction,
)
from .errors import (
    CertificateInvalid,
    CompositeModulus,
    ConfigError,
    DimensionMismatch,
    DivisionByZero,
    HypothesisViolated,
    MixedFields,
    NotAnExtension,
    NotEnoughPoints,
    NotInTower,
    OrderMismatch,
    SizeGuard,
    TensorCertError,
    TowerMismatch,
)
from .fields import (
    Field,
    FieldElement,
    element_from_json,
    element_to_json,
    extend,
    extend_with_modulus,
    field_from_json,
    field_of_order,
    generator,
    make_prime_field,
    relative_trace,
)
from .harness import (
    ConstantsReport,
    IntervalFactResult,
    PropWitness,
    StabilityReport,
    best_rank_certificate,
    best_subrank_certificate,
    check_interval_fact,
    default_config,
    fact_random_check,
    prop_q_witness,
    prop_r_witness,
    run_suite,
    stability_experiment,
    theorem_chain,
)
from .linalg import flattening_rank, matrix_rank
from .multtensor import MultSpec, mult_tensor, qmon_maps, verify_qmon
from .rankbounds import (
    FFConditionReport,
    FunctionFieldProfile,
    brute_force_rank,
    brute_force_subrank,
    check_ff_conditions,
    chudnovsky_rank,
    chudnovsky_subrank,
    compose_rank,
    compose_subrank,
    count_places_rational,
    rational_profile,
    schoolbook_rank,
    tower_profile,
)
from .tensors import LinearMap, Tensor, diagonal, random_tensor

__version__ = "0.1.0"

__all__ = [
    "ARValue",
    "CertificateInvalid",
    "CompositeModulus",
    "ConfigError",
    "ConstantsReport",
    "DimensionMismatch",
    "DivisionByZero",
    "ExactBias",
    "FFConditionReport",
    "Field",
    "FieldElement",
    "FunctionFieldProfile",
    "HypothesisViolated",
    "IntervalFactResult",
    "LinearMap",
    "MixedFields",
    "MultSpec",
    "NotAnExtension",
    "NotEnoughPoints",
    "NotInTower",
    "OrderMismatch",
    "PropWitness",
    "RankDecomposition",
    "RestrictionCertificate",
    "SizeGuard",
    "StabilityReport",
    "Tensor",
    "TensorCertError",
    "TowerMismatch",
    "analytic_rank",
    "best_rank_certificate",
    "best_subrank_certificate",
    "bias",
    "bias_via_characters",
    "brute_force_rank",
    "brute_force_subrank",
    "check_ff_conditions",
    "check_interval_fact",
    "chudnovsky_rank",
    "chudnovsky_subrank",
    "compose_rank",
    "compose_subrank",
    "count_places_rational",
    "default_config",
    "diagonal",
    "element_from_json",
    "element_to_json",
    "extend",
    "extend_with_modulus",
    "fact_random_check",
    "field_from_json",
    "field_of_order",
    "flattening_rank",
    "generator",
    "make_prime_field",
    "matrix_rank",
    "mult_tensor",
    "prop_q_witness",
    "prop_r_witness",
    "qmon_maps",
    "random_tensor",
    "rational_profile",
    "relative_trace",
    "run_suite",
    "schoolbook_rank",
    "stability_experiment",
    "theorem_chain",
    "tower_profile",
    "verify_decomposition",
    "verify_qmon",
    "verify_restriction",
]
