"""Blended Salagean operators and neighborhood criteria for truncated
p-valent analytic functions, with a verification harness for the
coefficient criteria, boundary-supremum membership tests, necessity
bounds and the max-modulus lemma backing them."""

from .circlemax import DEFAULT_GRID, max_modulus, max_modulus_on_circle
from .criteria import (
    ArgAlignment,
    ImplicationPair,
    Verdict,
    delta_lower_bound_m,
    delta_lower_bound_n,
    membership_m,
    membership_n,
    necessary_m,
    necessary_n,
    partner_weighted_sum,
    phase_difference,
    sufficient_m,
    sufficient_m_modulus,
    sufficient_n,
    sufficient_n_modulus,
    telescoping_partner,
    threshold_m,
    threshold_n,
    transfer_check,
)
from .errors import (
    DomainError,
    FalsificationError,
    HypothesisViolationError,
    InadmissibleDeltaError,
    PValentError,
)
from .harness import (
    GENERATOR_TARGETS,
    STANDARD_TOLERANCES,
    SUITES,
    InstanceSpec,
    LemmaWitness,
    SuiteReport,
    ToleranceProfile,
    generate_pair,
    generate_transfer_pair,
    lemma_witness,
    run_property_suite,
    sup_oracle,
)
from .series import (
    MultivalentFunction,
    NeighborhoodParams,
    OperatorParams,
    TruncatedSeries,
    blend_derivative_normalized,
    blend_derivative_weight,
    blend_normalized,
    blend_weight,
    complex_close,
    evaluate,
    exact_blend_derivative_weight,
    exact_blend_weight,
    falling_factorial,
    mth_derivative,
    phase_gap_radical,
    salagean_blend,
    salagean_iterate,
    wrap_angle,
)

__version__ = "0.1.0"

__all__ = [
    "ArgAlignment",
    "DEFAULT_GRID",
    "DomainError",
    "FalsificationError",
    "GENERATOR_TARGETS",
    "HypothesisViolationError",
    "ImplicationPair",
    "InadmissibleDeltaError",
    "InstanceSpec",
    "LemmaWitness",
    "MultivalentFunction",
    "NeighborhoodParams",
    "OperatorParams",
    "PValentError",
    "STANDARD_TOLERANCES",
    "SUITES",
    "SuiteReport",
    "ToleranceProfile",
    "TruncatedSeries",
    "Verdict",
    "blend_derivative_normalized",
    "blend_derivative_weight",
    "blend_normalized",
    "blend_weight",
    "complex_close",
    "delta_lower_bound_m",
    "delta_lower_bound_n",
    "evaluate",
    "exact_blend_derivative_weight",
    "exact_blend_weight",
    "falling_factorial",
    "generate_pair",
    "generate_transfer_pair",
    "lemma_witness",
    "max_modulus",
    "max_modulus_on_circle",
    "membership_m",
    "membership_n",
    "mth_derivative",
    "necessary_m",
    "necessary_n",
    "partner_weighted_sum",
    "phase_difference",
    "phase_gap_radical",
    "run_property_suite",
    "salagean_blend",
    "salagean_iterate",
    "sufficient_m",
    "sufficient_m_modulus",
    "sufficient_n",
    "sufficient_n_modulus",
    "sup_oracle",
    "telescoping_partner",
    "threshold_m",
    "threshold_n",
    "transfer_check",
    "wrap_angle",
]
