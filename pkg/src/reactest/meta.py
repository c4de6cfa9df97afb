"""Meta-analysis of two-arm binary-outcome studies on the risk-difference scale.

Each study contributes a risk difference with a Wald variance; pooling is
inverse-variance (fixed effects) or DerSimonian-Laird (random effects). Every
row, study or pooled, gets a three-way decision against the equivalence
region [-1, delta_hi], where delta_hi typically comes from a
number-needed-to-treat bound via 1/NNT.
"""

from dataclasses import dataclass
from typing import Sequence

from .decision import Decision, decide
from .errors import EmptyArm, InvalidCounts, NoStudies, SingleStudy
from .hypotheses import Interval
from .quantiles import norm_ppf
from .regions import IntervalRegion


@dataclass(frozen=True)
class StudySummary:
    """Per-study 2x2 counts: events / size for the treatment and control arms."""

    id: str
    events_treatment: int
    n_treatment: int
    events_control: int
    n_control: int

    def __post_init__(self):
        if self.n_treatment < 1 or self.n_control < 1:
            raise EmptyArm(f"study {self.id!r} has an empty arm")
        for events, n, arm in (
            (self.events_treatment, self.n_treatment, "treatment"),
            (self.events_control, self.n_control, "control"),
        ):
            if not 0 <= events <= n:
                raise InvalidCounts(f"study {self.id!r} {arm} arm: {events}/{n}")


@dataclass(frozen=True)
class PooledResult:
    """Pooled risk difference with its variance; tau_sq is 0 under fixed effects."""

    effect: float
    variance: float
    method: str  # "fixed" | "random"
    tau_sq: float
    level: float

    def __post_init__(self):
        if self.variance <= 0.0:
            raise ValueError("pooled variance must be positive")
        if self.method not in ("fixed", "random"):
            raise ValueError(f"method must be 'fixed' or 'random', got {self.method!r}")
        if self.method == "fixed" and self.tau_sq != 0.0:
            raise ValueError("fixed-effects pooling has tau_sq = 0")
        if self.tau_sq < 0.0:
            raise ValueError("tau_sq must be nonnegative")


def risk_difference(study: StudySummary, zero_cell_correction: bool = True):
    """(effect, variance) of the treatment-minus-control success probability.

    The effect always uses the raw proportions. When any of the four cells is
    zero and the correction is on, the variance (only) is computed from
    counts with 0.5 added to every cell, so no study degenerates to zero
    variance.
    """
    if study.n_treatment < 1 or study.n_control < 1:
        raise EmptyArm(f"study {study.id!r} has an empty arm")
    p_t = study.events_treatment / study.n_treatment
    p_c = study.events_control / study.n_control
    effect = p_t - p_c
    cells = (
        study.events_treatment,
        study.n_treatment - study.events_treatment,
        study.events_control,
        study.n_control - study.events_control,
    )
    if zero_cell_correction and any(c == 0 for c in cells):
        nt = study.n_treatment + 1.0
        nc = study.n_control + 1.0
        q_t = (study.events_treatment + 0.5) / nt
        q_c = (study.events_control + 0.5) / nc
        variance = q_t * (1.0 - q_t) / nt + q_c * (1.0 - q_c) / nc
    else:
        variance = p_t * (1.0 - p_t) / study.n_treatment + p_c * (1.0 - p_c) / study.n_control
    return effect, variance


def _effects_and_variances(studies, zero_cell_correction):
    if not studies:
        raise NoStudies("pooling requires at least one study")
    pairs = [risk_difference(s, zero_cell_correction) for s in studies]
    return [e for e, _ in pairs], [v for _, v in pairs]


def fixed_effects_pool(
    studies: Sequence[StudySummary], level: float = 0.95, zero_cell_correction: bool = True
) -> PooledResult:
    """Inverse-variance weighted pooling under a common-effect assumption."""
    effects, variances = _effects_and_variances(studies, zero_cell_correction)
    weights = [1.0 / v for v in variances]
    wsum = sum(weights)
    effect = sum(w * e for w, e in zip(weights, effects)) / wsum
    return PooledResult(effect, 1.0 / wsum, "fixed", 0.0, level)


def random_effects_pool(
    studies: Sequence[StudySummary], level: float = 0.95, zero_cell_correction: bool = True
) -> PooledResult:
    """DerSimonian-Laird random-effects pooling.

    tau^2 = max(0, (Q - (k-1)) / (sum w - sum w^2 / sum w)) with fixed-effects
    weights w_i = 1/v_i, then inverse-variance pooling with 1/(v_i + tau^2).
    Homogeneous studies (Q <= k-1) truncate to tau^2 = 0 and reproduce the
    fixed-effects result exactly.
    """
    effects, variances = _effects_and_variances(studies, zero_cell_correction)
    k = len(effects)
    if k < 2:
        raise SingleStudy("random-effects pooling requires at least two studies")
    weights = [1.0 / v for v in variances]
    wsum = sum(weights)
    fixed_effect = sum(w * e for w, e in zip(weights, effects)) / wsum
    q_stat = sum(w * (e - fixed_effect) ** 2 for w, e in zip(weights, effects))
    denom = wsum - sum(w * w for w in weights) / wsum
    tau_sq = max(0.0, (q_stat - (k - 1)) / denom) if denom > 0.0 else 0.0
    if tau_sq == 0.0:
        return PooledResult(fixed_effect, 1.0 / wsum, "random", 0.0, level)
    re_weights = [1.0 / (v + tau_sq) for v in variances]
    re_wsum = sum(re_weights)
    effect = sum(w * e for w, e in zip(re_weights, effects)) / re_wsum
    return PooledResult(effect, 1.0 / re_wsum, "random", tau_sq, level)


@dataclass(frozen=True)
class ForestRow:
    """One forest-plot row: a study or a pooled summary with its decision."""

    id: str
    effect: float
    lower: float
    upper: float
    variance: float
    marker_size: float  # inverse variance; strictly decreasing in variance
    decision: Decision
    kind: str  # "study" | "pooled-fixed" | "pooled-random"

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "effect": self.effect,
            "lower": self.lower,
            "upper": self.upper,
            "variance": self.variance,
            "marker_size": self.marker_size,
            "decision": self.decision.label,
            "kind": self.kind,
        }


@dataclass(frozen=True)
class ForestData:
    """Rows plus the shared equivalence region [-1, delta_hi]."""

    rows: tuple
    region_lo: float
    region_hi: float
    alpha: float

    def to_json_dict(self) -> dict:
        return {
            "region": [self.region_lo, self.region_hi],
            "alpha": self.alpha,
            "rows": [row.to_json_dict() for row in self.rows],
        }


def _wald_row(rid, effect, variance, z, level, null, kind) -> ForestRow:
    half = z * variance**0.5
    interval = IntervalRegion(effect - half, effect + half, level, effect)
    return ForestRow(
        rid, effect, interval.lower, interval.upper, variance,
        1.0 / variance, decide(interval, null), kind,
    )


def forest(
    studies: Sequence[StudySummary],
    delta_hi: float,
    alpha: float,
    pooling: str = "both",
    zero_cell_correction: bool = True,
) -> ForestData:
    """Forest data: per-study and pooled Wald intervals with their decisions.

    Every interval is tested against [-1, delta_hi]. marker_size is the
    inverse variance, matching markers drawn proportional to precision.
    """
    if not 0.0 < delta_hi <= 1.0:
        raise ValueError(f"delta_hi must lie in (0, 1], got {delta_hi}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if pooling not in ("fixed", "random", "both"):
        raise ValueError(f"pooling must be fixed, random, or both, got {pooling!r}")
    if not studies:
        raise NoStudies("forest requires at least one study")
    level = 1.0 - alpha
    z = norm_ppf(1.0 - alpha / 2.0)
    null = Interval(-1.0, delta_hi)
    rows = []
    for study in studies:
        effect, variance = risk_difference(study, zero_cell_correction)
        rows.append(_wald_row(study.id, effect, variance, z, level, null, "study"))
    if pooling in ("fixed", "both"):
        pooled = fixed_effects_pool(studies, level, zero_cell_correction)
        rows.append(_wald_row("pooled (fixed)", pooled.effect, pooled.variance,
                              z, level, null, "pooled-fixed"))
    if pooling in ("random", "both"):
        pooled = random_effects_pool(studies, level, zero_cell_correction)
        rows.append(_wald_row("pooled (random)", pooled.effect, pooled.variance,
                              z, level, null, "pooled-random"))
    return ForestData(tuple(rows), -1.0, delta_hi, alpha)
