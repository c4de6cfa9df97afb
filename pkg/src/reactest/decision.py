"""The three-way decision rule and its logical-coherence machinery.

A region is compared against a null hypothesis set: accept when the region
is contained in the null, reject when it is contained in the complement,
remain agnostic when it straddles. Containment against interval and
ellipsoid regions is decided exactly through contrast extents; grid-backed
regions are decided by membership of every member point (exact relative to
the grid). Families share one region with no level correction.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyGrid,
    GridNotStraddling,
    MixedRegions,
    NegativeDelta,
    UnsupportedPair,
)
from .hypotheses import (
    BOUNDARY_TOL,
    Band,
    Complement,
    HalfSpace,
    HypothesisRegion,
    Interval,
    MaxPairwiseBand,
    complement,
    is_subset,
    is_whole_space,
)
from .regions import (
    EllipsoidRegion,
    GridRegion,
    IntervalRegion,
    contrast_extent,
    invert_pvalue_region,
    welch_mean_diff_interval,
)


class Decision(Enum):
    """Three-way outcome; the numeric value makes invertibility arithmetic."""

    ACCEPT = 0.0
    AGNOSTIC = 0.5
    REJECT = 1.0

    def invert(self) -> "Decision":
        return Decision(1.0 - self.value)

    @property
    def label(self) -> str:
        return {0.0: "accept", 0.5: "agnostic", 1.0: "reject"}[self.value]


class TostOutcome(Enum):
    EQUIVALENCE_ESTABLISHED = "equivalence_established"
    NOT_ESTABLISHED = "not_established"


def _classify_extent(lo, hi, null_lo, null_hi) -> Decision:
    """Decision for an exact scalar extent against a closed null interval.

    Boundary ties resolve by closed-null membership: an endpoint equal to the
    null boundary (within 1e-12) counts as inside the null.
    """
    if lo >= null_lo - BOUNDARY_TOL and hi <= null_hi + BOUNDARY_TOL:
        return Decision.ACCEPT
    if hi < null_lo - BOUNDARY_TOL or lo > null_hi + BOUNDARY_TOL:
        return Decision.REJECT
    return Decision.AGNOSTIC


def classify_extents(lo, hi, null_lo, null_hi) -> np.ndarray:
    """Vector version of the extent rule; returns Decision values (0, 1/2, 1).

    This is the kernel the Monte Carlo harness uses, kept next to the scalar
    rule so the two cannot drift apart.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    accept = (lo >= null_lo - BOUNDARY_TOL) & (hi <= null_hi + BOUNDARY_TOL)
    reject = (hi < null_lo - BOUNDARY_TOL) | (lo > null_hi + BOUNDARY_TOL)
    out = np.full(lo.shape, 0.5)
    out[accept] = 0.0
    out[reject & ~accept] = 1.0
    return out


def _null_interval(h) -> tuple:
    """(null_lo, null_hi) of the 1-D set w.theta must fall in."""
    if isinstance(h, Band):
        return h.offset - h.delta, h.offset + h.delta
    if isinstance(h, HalfSpace):
        return (-np.inf, h.bound) if h.side == "below" else (h.bound, np.inf)
    if isinstance(h, Interval):
        return h.lo, h.hi
    raise UnsupportedPair(f"no extent form for {type(h).__name__}")


def _extent_weights(h, region_dim: int):
    if isinstance(h, (Band, HalfSpace)):
        w = np.asarray(h.weights, dtype=float)
    else:  # Interval hypothesis on a scalar parameter
        w = np.ones(1)
    if w.shape[0] != region_dim:
        raise DimensionMismatch(
            f"hypothesis dimension {w.shape[0]} does not match region dimension {region_dim}"
        )
    return w


def _decide_points(points: np.ndarray, h: HypothesisRegion) -> Decision:
    """Membership decision for a finite point cloud standing in for a region.

    An empty cloud accepts: containment is vacuous, and the accept condition
    is checked first, matching the p-value formulation's case order.
    """
    if points.shape[0] == 0:
        return Decision.ACCEPT
    inside = h.contains_many(points)
    if inside.all():
        return Decision.ACCEPT
    if not inside.any():
        return Decision.REJECT
    return Decision.AGNOSTIC


def _decide_with_extent(region, h):
    if isinstance(h, Complement):
        decision, extent = _decide_with_extent(region, h.inner)
        return decision.invert(), extent
    if isinstance(h, HalfSpace) and not h.closed:
        decision, extent = _decide_with_extent(region, complement(h))
        return decision.invert(), extent

    if isinstance(region, GridRegion):
        return _decide_points(region.member_points(), h), None

    if isinstance(region, (IntervalRegion, EllipsoidRegion)):
        dim = region.dimension
        if isinstance(h, MaxPairwiseBand):
            if h.dim != dim:
                raise DimensionMismatch(
                    f"hypothesis dimension {h.dim} does not match region dimension {dim}"
                )
            decisions = []
            for i in range(dim):
                for j in range(i + 1, dim):
                    w = np.zeros(dim)
                    w[i], w[j] = 1.0, -1.0
                    ext = contrast_extent(region, w)
                    decisions.append(_classify_extent(ext.lower, ext.upper, -h.delta, h.delta))
            if all(d is Decision.ACCEPT for d in decisions):
                return Decision.ACCEPT, None
            if any(d is Decision.REJECT for d in decisions):
                return Decision.REJECT, None
            return Decision.AGNOSTIC, None
        if isinstance(h, (Band, HalfSpace, Interval)):
            w = _extent_weights(h, dim)
            ext = contrast_extent(region, w)
            null_lo, null_hi = _null_interval(h)
            return _classify_extent(ext.lower, ext.upper, null_lo, null_hi), ext

    raise UnsupportedPair(
        f"no decision rule for {type(region).__name__} against {type(h).__name__}"
    )


def decide(region, h: HypothesisRegion) -> Decision:
    """Three-way decision of the null `h` using the region as evidence set."""
    decision, _ = _decide_with_extent(region, h)
    return decision


@dataclass(frozen=True)
class TestResult:
    """One decision, with the extent that produced it when one exists.

    `region` is kept (not serialized) so coherence checks can verify that a
    batch of results shares a single region.
    """

    hypothesis_id: str
    hypothesis: HypothesisRegion
    decision: Decision
    extent_used: Optional[IntervalRegion]
    level: float
    region: object = field(repr=False, compare=False, default=None)

    def to_json_dict(self) -> dict:
        return {
            "hypothesis": self.hypothesis_id,
            "decision": self.decision.label,
            "extent": None
            if self.extent_used is None
            else [self.extent_used.lower, self.extent_used.upper],
            "level": self.level,
        }


def decide_family(region, hs: Sequence[HypothesisRegion], ids=None) -> list:
    """Decide every hypothesis with the same shared region, no level correction."""
    if ids is None:
        ids = [f"H{i}" for i in range(len(hs))]
    results = []
    for hid, h in zip(ids, hs):
        decision, extent = _decide_with_extent(region, h)
        results.append(TestResult(hid, h, decision, extent, region.level, region))
    return results


def decide_via_pvalues(pvalue_fn, grid, alpha: float, h: HypothesisRegion) -> Decision:
    """Decision from a p-value family: invert {p > alpha} on the grid, then decide.

    The grid must straddle the null (at least one point inside and one
    outside), otherwise the comparison is vacuous on one side.
    """
    pts = np.asarray(grid, dtype=float)
    if pts.size == 0:
        raise EmptyGrid("grid has no points")
    inside = h.contains_many(pts)
    if inside.all() or not inside.any():
        raise GridNotStraddling("grid must contain points inside and outside the null")
    region = invert_pvalue_region(pvalue_fn, pts, alpha)
    return decide(region, h)


def tost_decision(sample_a, sample_b, delta: float, alpha: float) -> TostOutcome:
    """Classical equivalence test: is the (1 - 2*alpha) interval inside [-delta, delta]?

    Matches the three-way rule at level 1 - 2*alpha with accept and agnostic
    merged into "not established".
    """
    if delta < 0.0:
        raise NegativeDelta(f"delta must be nonnegative, got {delta}")
    if not 0.0 < alpha < 0.5:
        raise ValueError(f"alpha must lie in (0, 0.5) for a 1-2*alpha interval, got {alpha}")
    interval = welch_mean_diff_interval(sample_a, sample_b, 1.0 - 2.0 * alpha)
    decision = decide(interval, Band((1.0,), 0.0, delta))
    if decision is Decision.ACCEPT:
        return TostOutcome.EQUIVALENCE_ESTABLISHED
    return TostOutcome.NOT_ESTABLISHED


@dataclass(frozen=True)
class CoherenceViolation:
    rule: str  # propriety | monotonicity | invertibility | consonance
    hypothesis_ids: tuple


@dataclass(frozen=True)
class CoherenceReport:
    violations: tuple

    @property
    def ok(self) -> bool:
        return len(self.violations) == 0


def _pairwise_band_delta(h: Band) -> Optional[tuple]:
    """(i, j, delta) when the band is |theta_i - theta_j| <= delta up to scale."""
    w = np.asarray(h.weights)
    nz = np.nonzero(w)[0]
    if nz.shape[0] != 2:
        return None
    i, j = int(nz[0]), int(nz[1])
    if abs(w[i] + w[j]) > 1e-12 * abs(w[i]) or h.offset != 0.0:
        return None
    scale = abs(w[i])
    return i, j, h.delta / scale


def check_coherence(results: Sequence[TestResult], subset_oracle=is_subset) -> CoherenceReport:
    """Scan a family of results for logical-coherence violations.

    Checks propriety (whole space accepted), monotonicity on decidable subset
    pairs, invertibility on structural complement pairs, and the
    pairwise-to-max-pairwise consonance instance. Results must come from a
    single shared region; a family produced by decide_family never violates
    any rule.
    """
    if not results:
        return CoherenceReport(())
    region0 = results[0].region
    for r in results[1:]:
        if r.region is not region0:
            raise MixedRegions("results were produced from different regions")

    violations = []
    for r in results:
        if is_whole_space(r.hypothesis) and r.decision is not Decision.ACCEPT:
            violations.append(CoherenceViolation("propriety", (r.hypothesis_id,)))

    for r1 in results:
        for r2 in results:
            if r1 is r2:
                continue
            if subset_oracle(r1.hypothesis, r2.hypothesis) is True:
                if r2.decision.value > r1.decision.value:
                    violations.append(
                        CoherenceViolation("monotonicity", (r1.hypothesis_id, r2.hypothesis_id))
                    )

    for a in range(len(results)):
        for b in range(a + 1, len(results)):
            r1, r2 = results[a], results[b]
            if complement(r1.hypothesis) == r2.hypothesis or complement(r2.hypothesis) == r1.hypothesis:
                if abs(r1.decision.value + r2.decision.value - 1.0) > 1e-12:
                    violations.append(
                        CoherenceViolation("invertibility", (r1.hypothesis_id, r2.hypothesis_id))
                    )

    for r in results:
        if not isinstance(r.hypothesis, MaxPairwiseBand):
            continue
        hmax = r.hypothesis
        pair_results = {}
        for other in results:
            if isinstance(other.hypothesis, Band) and len(other.hypothesis.weights) == hmax.dim:
                info = _pairwise_band_delta(other.hypothesis)
                if info is not None and abs(info[2] - hmax.delta) <= BOUNDARY_TOL:
                    pair_results[(min(info[0], info[1]), max(info[0], info[1]))] = other
        wanted = {(i, j) for i in range(hmax.dim) for j in range(i + 1, hmax.dim)}
        if set(pair_results) != wanted:
            continue
        ids = tuple(pr.hypothesis_id for pr in pair_results.values()) + (r.hypothesis_id,)
        if all(pr.decision is Decision.ACCEPT for pr in pair_results.values()):
            if r.decision is not Decision.ACCEPT:
                violations.append(CoherenceViolation("consonance", ids))
        if any(pr.decision is Decision.REJECT for pr in pair_results.values()):
            if r.decision is not Decision.REJECT:
                violations.append(CoherenceViolation("consonance", ids))

    return CoherenceReport(tuple(violations))
