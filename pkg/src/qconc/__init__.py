"""Two-qubit concurrence toolkit.

Exact Wootters oracle, local-unitary invariants, rank-wise concurrence
estimators built from single-qubit observables, entanglement bounds for
rank-3 and rank-4 mixtures, simulated Pauli measurements, and a seeded
Monte-Carlo validation harness.
"""

from importlib.metadata import PackageNotFoundError, version

from .bounds import (
    REGION_ENTANGLED,
    REGION_INFEASIBLE,
    REGION_SEPARABLE,
    Rank3Canonical,
    Rank3Mixture,
    Rank4Mixture,
    assemble_rank3_max,
    assemble_rank4_max,
    classify_weights,
    rank3_bound,
    rank3_max_concurrence,
    rank3_threshold,
    rank4_bound,
    rank4_max_concurrence,
    rank4_region,
)
from .concurrence import (
    ConcurrenceDiagnostics,
    concurrence_oracle,
    concurrence_pure,
    spin_flip,
)
from .errors import (
    DomainError,
    EigSolveFailure,
    I1Zero,
    I3Mismatch,
    Infeasible,
    InvalidPurity,
    InvalidState,
    NotAState,
    NotNormalized,
    NotPure,
    QconcError,
    ReconstructionDegenerate,
)
from .estimators import (
    Rank2Canonical,
    Rank2Degenerate,
    Rank2SepDecomp,
    XState,
    assemble_ladder,
    assemble_rank2,
    assemble_rank2_degenerate,
    assemble_rank2_sep,
    assemble_xstate,
    canonical_vectors_rank2,
    estimate_projection2,
    estimate_pure,
    estimate_rank2_degenerate,
    estimate_rank2_sep2,
    invariants_of,
    ladder_concurrence,
    ladder_from_correlation,
    local_observables_rank2,
    mixedness_to_lambda,
    reconstruct_rank2,
    xstate_concurrence,
    xstate_concurrence_invariant,
)
from .invariants import (
    DerivedCorrelates,
    InvariantVector,
    derived_correlates,
    invariant_vector,
    purity_residuals,
)
from .measurement import (
    ALL_OBSERVABLES,
    LambdaEstimate,
    MeasurementRecord,
    WeightsEstimate,
    expectation,
    lambda_from_szpz,
    lambdas_from_correlations,
    sample_correlations,
    sample_expectation,
)
from .qstate import (
    AXES,
    PAULI,
    BlochDecomposition,
    DensityOperator,
    LocalUnitary,
    PureState,
    apply_local,
    assemble,
    bell_state,
    decompose,
    haar_unitary2,
    maximally_mixed,
    pauli_pair,
    random_pure,
    random_rank_k,
    rank_of,
    werner_state,
)
from .stateio import (
    bloch_to_dict,
    canonical_dumps,
    read_records,
    read_state,
    record_from_dict,
    record_to_dict,
    report_header,
    state_from_dict,
    state_to_dict,
    write_records,
    write_state,
)
from .validate import SUITES, SuiteReport, run_suites

try:
    __version__ = version("qconc")
except PackageNotFoundError:
    __version__ = "0.1.0"

__all__ = [
    "ALL_OBSERVABLES",
    "AXES",
    "PAULI",
    "REGION_ENTANGLED",
    "REGION_INFEASIBLE",
    "REGION_SEPARABLE",
    "SUITES",
    "BlochDecomposition",
    "ConcurrenceDiagnostics",
    "DensityOperator",
    "DerivedCorrelates",
    "DomainError",
    "EigSolveFailure",
    "I1Zero",
    "I3Mismatch",
    "Infeasible",
    "InvalidPurity",
    "InvalidState",
    "InvariantVector",
    "LambdaEstimate",
    "LocalUnitary",
    "MeasurementRecord",
    "NotAState",
    "NotNormalized",
    "NotPure",
    "PureState",
    "QconcError",
    "Rank2Canonical",
    "Rank2Degenerate",
    "Rank2SepDecomp",
    "Rank3Canonical",
    "Rank3Mixture",
    "Rank4Mixture",
    "ReconstructionDegenerate",
    "SuiteReport",
    "WeightsEstimate",
    "XState",
    "apply_local",
    "assemble",
    "assemble_ladder",
    "assemble_rank2",
    "assemble_rank2_degenerate",
    "assemble_rank2_sep",
    "assemble_rank3_max",
    "assemble_rank4_max",
    "assemble_xstate",
    "bell_state",
    "bloch_to_dict",
    "canonical_dumps",
    "canonical_vectors_rank2",
    "classify_weights",
    "concurrence_oracle",
    "concurrence_pure",
    "decompose",
    "derived_correlates",
    "estimate_projection2",
    "estimate_pure",
    "estimate_rank2_degenerate",
    "estimate_rank2_sep2",
    "expectation",
    "haar_unitary2",
    "invariant_vector",
    "invariants_of",
    "ladder_concurrence",
    "ladder_from_correlation",
    "lambda_from_szpz",
    "lambdas_from_correlations",
    "local_observables_rank2",
    "maximally_mixed",
    "mixedness_to_lambda",
    "pauli_pair",
    "purity_residuals",
    "random_pure",
    "random_rank_k",
    "rank3_bound",
    "rank3_max_concurrence",
    "rank3_threshold",
    "rank4_bound",
    "rank4_max_concurrence",
    "rank4_region",
    "rank_of",
    "read_records",
    "read_state",
    "record_from_dict",
    "record_to_dict",
    "report_header",
    "run_suites",
    "sample_correlations",
    "sample_expectation",
    "spin_flip",
    "state_from_dict",
    "state_to_dict",
    "werner_state",
    "write_records",
    "write_state",
    "__version__",
]
