"""reactest: three-way hypothesis testing with equivalence regions.

A test compares a confidence (or credible) region against a null region of
practically-equivalent parameter values and returns one of three outcomes:
accept (the region sits inside the null), reject (the region sits inside the
complement), or remain agnostic (the region straddles the boundary).
"""

from .quantiles import BACKEND as KERNEL_BACKEND
from .regions import (
    EllipsoidRegion,
    GridRegion,
    IntervalRegion,
    cohens_d_interval,
    contrast_extent,
    invert_pvalue_region,
    mean_vector_ellipsoid,
    project_ellipsoid,
    welch_mean_diff_interval,
)
from .hypotheses import (
    Band,
    Complement,
    HalfSpace,
    HypothesisRegion,
    Interval,
    MaxPairwiseBand,
    build_pragmatic,
    complement,
    is_subset,
    nnt_to_delta,
)
from .decision import (
    CoherenceReport,
    Decision,
    TestResult,
    TostOutcome,
    check_coherence,
    decide,
    decide_family,
    decide_via_pvalues,
    tost_decision,
)
from .bayes import (
    BetaPosterior,
    HPDRegion,
    NIGPosterior,
    beta_jeffreys_posterior,
    breact_decide,
    e_value,
    hpd_region,
    nig_update,
    posterior_prob,
)
from .meta import (
    ForestData,
    PooledResult,
    StudySummary,
    fixed_effects_pool,
    forest,
    random_effects_pool,
    risk_difference,
)
from .simulate import (
    ErrorRateReport,
    Scenario,
    consistency_curve,
    simulate_error_rates,
    simulate_fwer,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "IntervalRegion", "EllipsoidRegion", "GridRegion",
    "welch_mean_diff_interval", "mean_vector_ellipsoid", "cohens_d_interval",
    "invert_pvalue_region", "contrast_extent", "project_ellipsoid",
    "HypothesisRegion", "Band", "HalfSpace", "Interval", "MaxPairwiseBand",
    "Complement", "build_pragmatic", "nnt_to_delta", "complement", "is_subset",
    "Decision", "TestResult", "TostOutcome", "CoherenceReport",
    "decide", "decide_family", "decide_via_pvalues", "tost_decision",
    "check_coherence",
    "NIGPosterior", "BetaPosterior", "HPDRegion",
    "nig_update", "hpd_region", "e_value", "breact_decide", "posterior_prob",
    "beta_jeffreys_posterior",
    "StudySummary", "PooledResult", "ForestData",
    "risk_difference", "fixed_effects_pool", "random_effects_pool", "forest",
    "Scenario", "ErrorRateReport",
    "simulate_error_rates", "simulate_fwer", "consistency_curve",
]
