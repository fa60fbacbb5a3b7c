"""Bipartite randomized response for local differential privacy.

Construction of the split count m by derivative search or closed form,
mechanism tables (GRR, BRR, exponential, Laplace noise), exact and
Monte-Carlo utility metrics, and continuous-interval adapters.
"""

from .core import (
    LOSS,
    UTILITY,
    DiscreteDomain,
    MechanismTable,
    PrivacyBudget,
    RandomSource,
    RankedRow,
    UtilityTable,
    ValidationReport,
    load_utility_csv,
    rank_rows,
    sample,
    sample_many,
    save_utility_csv,
    validate_mechanism,
)
from .search import (
    SearchTrace,
    WeightProfile,
    bipartite_profile,
    derivative_numerator,
    global_search,
    local_search,
)
from .mechanisms import (
    BrrParams,
    brr,
    brr_params,
    construct_Ym,
    exponential,
    grr,
    laplace_noise,
)
from .closed_form import (
    ClosedFormM,
    DegenerateBudgetError,
    LocalRatioBounds,
    RegimeError,
    closed_form_m,
    global_ratio_limit,
    local_ratio_bounds,
    m_over_n_limit,
    qg_brr_closed,
    quadratic_z,
)
from .metrics import (
    MetricsReport,
    RatioReport,
    UndefinedRatioError,
    equidistant_local_errors,
    equidistant_q_global,
    global_expected_error,
    is_equidistant_euclidean,
    local_expected_error,
    local_expected_error_ranked,
    monte_carlo_q,
    optimal_split,
    per_priori_errors,
    ratio_report,
    split_q_values,
)
from .adapters import (
    IntervalSpec,
    NearestPoint,
    equidistant_m,
    euclidean_loss_table,
    general_brr,
    jaccard_utility_table,
    nearest_point,
    perturb_continuous,
)

__version__ = "0.1.0"

__all__ = [
    "LOSS",
    "UTILITY",
    "DiscreteDomain",
    "MechanismTable",
    "PrivacyBudget",
    "RandomSource",
    "RankedRow",
    "UtilityTable",
    "ValidationReport",
    "load_utility_csv",
    "rank_rows",
    "sample",
    "sample_many",
    "save_utility_csv",
    "validate_mechanism",
    "SearchTrace",
    "WeightProfile",
    "bipartite_profile",
    "derivative_numerator",
    "global_search",
    "local_search",
    "BrrParams",
    "brr",
    "brr_params",
    "construct_Ym",
    "exponential",
    "grr",
    "laplace_noise",
    "ClosedFormM",
    "DegenerateBudgetError",
    "LocalRatioBounds",
    "RegimeError",
    "closed_form_m",
    "global_ratio_limit",
    "local_ratio_bounds",
    "m_over_n_limit",
    "qg_brr_closed",
    "quadratic_z",
    "MetricsReport",
    "RatioReport",
    "UndefinedRatioError",
    "equidistant_local_errors",
    "equidistant_q_global",
    "global_expected_error",
    "is_equidistant_euclidean",
    "local_expected_error",
    "local_expected_error_ranked",
    "monte_carlo_q",
    "optimal_split",
    "per_priori_errors",
    "ratio_report",
    "split_q_values",
    "IntervalSpec",
    "NearestPoint",
    "equidistant_m",
    "euclidean_loss_table",
    "general_brr",
    "jaccard_utility_table",
    "nearest_point",
    "perturb_continuous",
]
