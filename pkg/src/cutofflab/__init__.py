"""Cut-off phenomenon toolkit for Brownian motion on the classical compact
groups and their symmetric spaces: heat-kernel series, total-variation
bounds around the cut-off time, exact matrix-coefficient moments, and
Monte Carlo cross-checks."""

from __future__ import annotations

from .errors import (
    CutoffLabError,
    DegenerateAlphabet,
    FieldMismatch,
    HalfPartitionUnsupported,
    InvalidRank,
    TailNotControllable,
    TooLarge,
    UnknownFamily,
    UnsupportedPattern,
    UnsupportedSpace,
    UnsupportedStatistic,
    WeightKindMismatch,
)
from .heatseries import (
    SeriesTerm,
    SweepResult,
    TruncationReport,
    density,
    dominating_series,
    eta_quotient,
    per_term_bound_sweep,
    per_term_exceeds,
    per_term_value,
    series_terms,
    t_zero,
    tv_upper_bound,
)
from .partitions import (
    GrowthStep,
    IndexingSetKind,
    LastSign,
    Weight,
    WeightKind,
    enumerate_by_size,
    growth_path,
    partition_counts,
    size_of,
)
from .cutoff import (
    OmegaSpec,
    ProfilePoint,
    certified_window,
    lower_bound,
    mean_variance,
    omega_spec,
    omega_value,
    profile,
    profile_csv,
    profile_json,
    variance_cap,
    zonal_square_series,
    zonal_value,
)
from .moments import (
    CasimirTensor,
    EigenEntry,
    EigenReport,
    MomentTensor,
    casimir,
    closed_form_names,
    closed_form_value,
    expectation_entries,
    generator_moment,
    moment,
    moment_generator,
    verify_eigentable,
    zonal_square_expansion,
)
from .repchar import (
    CharType,
    casimir_exponent,
    dimension,
    schur,
    verify_square_identity,
)
from .sampler import (
    STATISTICS,
    Estimate,
    SimulationConfig,
    brownian_path,
    estimate,
    haar_sample,
    simulate_endpoints,
)
from .spaces import Family, SpaceDescriptor, describe, indexing_set, minimal_weight
from .verification import CHECK_NAMES, CheckResult, run_all, run_check

__version__ = "0.1.0"

__all__ = [
    "CutoffLabError",
    "DegenerateAlphabet",
    "FieldMismatch",
    "HalfPartitionUnsupported",
    "InvalidRank",
    "TailNotControllable",
    "TooLarge",
    "UnknownFamily",
    "UnsupportedPattern",
    "UnsupportedSpace",
    "UnsupportedStatistic",
    "WeightKindMismatch",
    "SeriesTerm",
    "SweepResult",
    "TruncationReport",
    "density",
    "dominating_series",
    "eta_quotient",
    "per_term_bound_sweep",
    "per_term_exceeds",
    "per_term_value",
    "series_terms",
    "t_zero",
    "tv_upper_bound",
    "GrowthStep",
    "IndexingSetKind",
    "LastSign",
    "Weight",
    "WeightKind",
    "enumerate_by_size",
    "growth_path",
    "partition_counts",
    "size_of",
    "CharType",
    "casimir_exponent",
    "dimension",
    "schur",
    "verify_square_identity",
    "Family",
    "SpaceDescriptor",
    "describe",
    "indexing_set",
    "minimal_weight",
    "OmegaSpec",
    "ProfilePoint",
    "certified_window",
    "lower_bound",
    "mean_variance",
    "omega_spec",
    "omega_value",
    "profile",
    "profile_csv",
    "profile_json",
    "variance_cap",
    "zonal_square_series",
    "zonal_value",
    "CasimirTensor",
    "EigenEntry",
    "EigenReport",
    "MomentTensor",
    "casimir",
    "closed_form_names",
    "closed_form_value",
    "expectation_entries",
    "generator_moment",
    "moment",
    "moment_generator",
    "verify_eigentable",
    "zonal_square_expansion",
    "STATISTICS",
    "Estimate",
    "SimulationConfig",
    "brownian_path",
    "estimate",
    "haar_sample",
    "simulate_endpoints",
    "CHECK_NAMES",
    "CheckResult",
    "run_all",
    "run_check",
    "__version__",
]
