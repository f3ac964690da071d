"""Smoothed spread measures of Schmidt spectra and communication lower bounds.

The spread of a bipartite pure state's Schmidt spectrum, the gap between its
max-entropy and min-entropy, lower-bounds the communication any LOCC protocol
needs to change it.  This package computes spreads and their eps-smoothed
versions exactly (including for tensor powers with astronomically many
eigenvalues, via grouped log-domain spectra), evaluates the resulting
communication bounds, and simulates the protocols they constrain.
"""

from .bounds import (
    BoundReport,
    alpha_beta_bound,
    deterministic_bound,
    smoothed_bound,
    smoothing_level,
)
from .entropy import delta, delta_ab, kl_divergence, renyi, shannon
from .errors import DomainError, ResourceGuardError, SpecParseError
from .majorization import locc_feasible, majorized_by, zero_comm_max_entangled
from .protocols import (
    DilutionReport,
    EmbezzlerCheck,
    EmbezzlerCreationBound,
    YieldStats,
    concentration_simulate,
    dilution_accounting,
    embezzler_bound_check,
    embezzler_creation_bound,
)
from .smoothing import (
    SmoothWitness,
    delta_ab_eps,
    delta_eps,
    delta_eps_bruteforce,
    evaluate_witness,
    s0_eps,
    sinf_eps,
)
from .spectrum import (
    GroupedSpectrum,
    Spectrum,
    embezzler_spectrum,
    exact_counts,
    group,
    parse_state_spec,
    realize,
    spectrum_from_probs,
    tensor,
    trace_distance_diag,
    two_level_spectrum,
    ungroup,
    uniform_spectrum,
)
from .tensor_power import (
    CltParams,
    TypeVector,
    TypicalSetReport,
    clt_delta_prediction,
    clt_params,
    enumerate_types,
    is_type_typical,
    num_types,
    power_grouped_spectrum,
    type_log_cardinality,
    type_log_weight,
    typical_set_report,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CltParams",
    "DilutionReport",
    "DomainError",
    "EmbezzlerCheck",
    "EmbezzlerCreationBound",
    "GroupedSpectrum",
    "ResourceGuardError",
    "SmoothWitness",
    "SpecParseError",
    "Spectrum",
    "TypeVector",
    "TypicalSetReport",
    "YieldStats",
    "alpha_beta_bound",
    "clt_delta_prediction",
    "clt_params",
    "concentration_simulate",
    "delta",
    "delta_ab",
    "delta_ab_eps",
    "delta_eps",
    "delta_eps_bruteforce",
    "deterministic_bound",
    "dilution_accounting",
    "embezzler_bound_check",
    "embezzler_creation_bound",
    "embezzler_spectrum",
    "enumerate_types",
    "evaluate_witness",
    "exact_counts",
    "group",
    "is_type_typical",
    "kl_divergence",
    "locc_feasible",
    "majorized_by",
    "num_types",
    "parse_state_spec",
    "power_grouped_spectrum",
    "realize",
    "renyi",
    "s0_eps",
    "shannon",
    "sinf_eps",
    "smoothed_bound",
    "smoothing_level",
    "spectrum_from_probs",
    "tensor",
    "trace_distance_diag",
    "two_level_spectrum",
    "type_log_cardinality",
    "type_log_weight",
    "typical_set_report",
    "ungroup",
    "uniform_spectrum",
    "zero_comm_max_entangled",
]
