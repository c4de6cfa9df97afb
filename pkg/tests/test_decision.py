"""Three-way rule: exactness, coherence, the p-value route, and TOST."""

import numpy as np
import pytest

from reactest import (
    Band,
    Complement,
    Decision,
    EllipsoidRegion,
    Interval,
    IntervalRegion,
    MaxPairwiseBand,
    TostOutcome,
    check_coherence,
    complement,
    decide,
    decide_family,
    decide_via_pvalues,
    invert_pvalue_region,
    tost_decision,
    welch_mean_diff_interval,
)
from reactest.decision import TestResult as DecisionRow
from reactest.decision import classify_extents
from reactest.errors import (
    EmptyGrid,
    GridNotStraddling,
    MixedRegions,
    UnsupportedPair,
)
from reactest.hypotheses import HalfSpace
from reactest.quantiles import norm_sf

from oracles import decision_oracle_points
from test_regions import random_spd_ellipsoid

BAND_HALF = Band((1.0,), 0.0, 0.5)


def interval(lo, hi, level=0.95):
    return IntervalRegion(lo, hi, level, (lo + hi) / 2.0)


class TestThreeWayRule:
    def test_containment_accepts(self):
        assert decide(interval(0.1, 0.3), BAND_HALF) is Decision.ACCEPT

    def test_disjoint_rejects(self):
        assert decide(interval(0.6, 0.9), BAND_HALF) is Decision.REJECT

    def test_straddle_stays_agnostic(self):
        assert decide(interval(0.4, 0.6), BAND_HALF) is Decision.AGNOSTIC

    def test_boundary_touch_counts_as_inside_closed_null(self):
        # endpoint exactly on the null boundary: inside for acceptance,
        # not outside for rejection
        assert decide(interval(0.2, 0.5), BAND_HALF) is Decision.ACCEPT
        assert decide(interval(0.5, 0.9), BAND_HALF) is Decision.AGNOSTIC
        assert decide(interval(-0.5, 0.5), BAND_HALF) is Decision.ACCEPT

    def test_halfspace_hypothesis(self):
        h = HalfSpace((1.0,), 0.5, "below")
        assert decide(interval(0.0, 0.4), h) is Decision.ACCEPT
        assert decide(interval(0.6, 0.9), h) is Decision.REJECT
        assert decide(interval(0.4, 0.6), h) is Decision.AGNOSTIC

    def test_interval_hypothesis_on_scalar_region(self):
        h = Interval(-1.0, 1.0 / 6.0)
        assert decide(interval(-0.1, 0.1), h) is Decision.ACCEPT
        assert decide(interval(0.2, 0.4), h) is Decision.REJECT

    def test_whole_space_always_accepted(self):
        assert decide(interval(-100, 100), Band((1.0,), 0.0, float("inf"))) is Decision.ACCEPT

    def test_ellipsoid_band_against_point_oracle(self):
        rng = np.random.default_rng(99)
        checked = 0
        for _ in range(50):
            region = random_spd_ellipsoid(rng)
            w = rng.normal(size=3)
            delta = rng.uniform(0.5, 4.0)
            h = Band(tuple(w), float(rng.uniform(-1, 1)), delta)
            from reactest import contrast_extent

            ext = contrast_extent(region, w)
            margins = [
                abs(ext.lower - (h.offset - delta)), abs(ext.upper - (h.offset + delta)),
                abs(ext.lower - (h.offset + delta)), abs(ext.upper - (h.offset - delta)),
            ]
            if min(margins) < 1e-3:
                continue
            checked += 1
            oracle = decision_oracle_points(region, h, seed=int(rng.integers(1 << 30)))
            assert decide(region, h).label == oracle
        assert checked >= 40

    def test_max_pairwise_band_via_pairwise_extents(self):
        tight = EllipsoidRegion([0.0, 0.05, -0.05], np.diag([400.0, 400.0, 400.0]), 7.81, 0.95)
        assert decide(tight, MaxPairwiseBand(0.5, 3)) is Decision.ACCEPT
        far = EllipsoidRegion([0.0, 2.0, 4.0], np.diag([400.0] * 3), 7.81, 0.95)
        assert decide(far, MaxPairwiseBand(0.5, 3)) is Decision.REJECT
        wide = EllipsoidRegion([0.0, 0.05, -0.05], np.diag([4.0] * 3), 7.81, 0.95)
        assert decide(wide, MaxPairwiseBand(0.5, 3)) is Decision.AGNOSTIC

    def test_unsupported_pair(self):
        with pytest.raises(UnsupportedPair):
            decide(object(), BAND_HALF)


class TestClassifyExtentsBatch:
    def test_matches_scalar_rule(self):
        rng = np.random.default_rng(5)
        lo = rng.uniform(-2, 2, 500)
        hi = lo + rng.uniform(0, 2, 500)
        codes = classify_extents(lo, hi, -0.5, 0.5)
        for i in range(500):
            assert codes[i] == decide(interval(lo[i], hi[i]), BAND_HALF).value


class TestDecideFamily:
    def test_empty_family(self):
        assert decide_family(interval(0, 1), []) == []

    def test_shared_region_and_ids(self):
        region = random_spd_ellipsoid(np.random.default_rng(1))
        hs = [Band((1.0, -1.0, 0.0), 0.0, 0.5), MaxPairwiseBand(0.5, 3)]
        results = decide_family(region, hs)
        assert [r.hypothesis_id for r in results] == ["H0", "H1"]
        assert all(r.region is region for r in results)
        assert all(r.level == region.level for r in results)

    def test_engineered_accept_agnostic_reject_pattern(self):
        # means and precisions chosen so the three pairwise comparisons land
        # one in each case: pair (0,1) tight near zero, (0,2) clearly outside,
        # (1,2) straddling
        region = EllipsoidRegion(
            [0.0, 0.1, 1.1], np.diag([900.0, 900.0, 25.0]), 7.8147, 0.95
        )
        delta = 0.5
        hs, ids = [], []
        for i, j in ((0, 1), (0, 2), (1, 2)):
            w = np.zeros(3)
            w[i], w[j] = 1.0, -1.0
            hs.append(Band(tuple(w), 0.0, delta))
            ids.append(f"{i}{j}")
        results = decide_family(region, hs, ids=ids)
        by_id = {r.hypothesis_id: r.decision for r in results}
        assert by_id["01"] is Decision.ACCEPT
        assert by_id["02"] is Decision.REJECT
        assert by_id["12"] is Decision.AGNOSTIC
        # each decision re-derivable from its own contrast extent
        from reactest import contrast_extent

        for (i, j), want in zip(((0, 1), (0, 2), (1, 2)), ("accept", "reject", "agnostic")):
            w = np.zeros(3)
            w[i], w[j] = 1.0, -1.0
            ext = contrast_extent(region, w)
            if want == "accept":
                assert -delta <= ext.lower and ext.upper <= delta
            elif want == "reject":
                assert ext.upper < -delta or ext.lower > delta
            else:
                assert ext.lower < -delta < ext.upper or ext.lower < delta < ext.upper

    def test_family_with_complement_is_invertible(self):
        region = interval(0.2, 0.8)
        h = Band((1.0,), 0.0, 0.5)
        results = decide_family(region, [h, complement(h)])
        assert results[0].decision.value + results[1].decision.value == 1.0

    def test_json_round_trip_schema(self):
        results = decide_family(interval(0.1, 0.3), [BAND_HALF], ids=["band"])
        payload = results[0].to_json_dict()
        assert payload == {
            "hypothesis": "band",
            "decision": "accept",
            "extent": [0.1, 0.3],
            "level": 0.95,
        }


class TestPvalueRoute:
    GRID = np.round(np.arange(-3.0, 3.0001, 0.01), 10)

    def test_constant_one_is_agnostic(self):
        assert (
            decide_via_pvalues(lambda _t: 1.0, self.GRID, 0.05, BAND_HALF)
            is Decision.AGNOSTIC
        )

    def test_small_pvalues_on_null_grid_reject(self):
        fn = lambda t: 0.05 if BAND_HALF.contains([t]) else 1.0
        assert decide_via_pvalues(fn, self.GRID, 0.05, BAND_HALF) is Decision.REJECT

    def test_gaussian_family_matches_region_route(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            xbar = rng.uniform(-2.5, 2.5)
            fn = lambda t, xbar=xbar: 2.0 * norm_sf(abs(xbar - t))
            via_pvals = decide_via_pvalues(fn, self.GRID, 0.05, BAND_HALF)
            region = invert_pvalue_region(fn, self.GRID, 0.05)
            assert via_pvals is decide(region, BAND_HALF)

    def test_far_xbar_rejects(self):
        fn = lambda t: 2.0 * norm_sf(abs(2.8 - t))
        assert decide_via_pvalues(fn, self.GRID, 0.05, BAND_HALF) is Decision.REJECT

    def test_errors(self):
        with pytest.raises(EmptyGrid):
            decide_via_pvalues(lambda _t: 1.0, [], 0.05, BAND_HALF)
        with pytest.raises(GridNotStraddling):
            decide_via_pvalues(lambda _t: 1.0, np.linspace(-0.4, 0.4, 9), 0.05, BAND_HALF)


class TestTost:
    def test_interval_inside_establishes_equivalence(self):
        a = np.array([0.0, 0.1, -0.1, 0.05, -0.05] * 6)
        b = a + 0.02
        assert tost_decision(a, b, 0.5, 0.05) is TostOutcome.EQUIVALENCE_ESTABLISHED

    def test_shifted_data_not_established(self):
        rng = np.random.default_rng(2)
        a = rng.normal(1.0, 0.1, 30)
        b = rng.normal(0.0, 0.1, 30)
        assert tost_decision(a, b, 0.5, 0.05) is TostOutcome.NOT_ESTABLISHED

    def test_matches_merged_three_way_rule(self):
        rng = np.random.default_rng(77)
        for _ in range(200):
            na, nb = rng.integers(5, 30), rng.integers(5, 30)
            a = rng.normal(rng.uniform(-1, 1), rng.uniform(0.2, 2), na)
            b = rng.normal(rng.uniform(-1, 1), rng.uniform(0.2, 2), nb)
            delta, alpha = rng.uniform(0.05, 1.0), rng.uniform(0.01, 0.2)
            tost = tost_decision(a, b, delta, alpha)
            region = welch_mean_diff_interval(a, b, 1.0 - 2.0 * alpha)
            merged = decide(region, Band((1.0,), 0.0, delta))
            assert (tost is TostOutcome.EQUIVALENCE_ESTABLISHED) == (merged is Decision.ACCEPT)


class TestCoherence:
    def _result(self, hid, h, decision, region):
        return DecisionRow(hid, h, decision, None, region.level, region)

    def test_family_from_decide_family_is_clean(self):
        region = random_spd_ellipsoid(np.random.default_rng(3))
        hs = []
        for i, j in ((0, 1), (0, 2), (1, 2)):
            w = np.zeros(3)
            w[i], w[j] = 1.0, -1.0
            hs.append(Band(tuple(w), 0.0, 0.5))
        hs.append(MaxPairwiseBand(0.5, 3))
        hs.append(complement(hs[0]))
        report = check_coherence(decide_family(region, hs))
        assert report.ok

    def test_monotonicity_violation_flagged(self):
        region = interval(0.0, 1.0)
        inner = Interval(-0.4, 0.4)
        outer = Interval(-0.5, 0.5)
        results = [
            self._result("inner", inner, Decision.ACCEPT, region),
            self._result("outer", outer, Decision.REJECT, region),
        ]
        report = check_coherence(results)
        assert any(v.rule == "monotonicity" for v in report.violations)

    def test_invertibility_violation_flagged(self):
        region = interval(0.0, 1.0)
        h = Band((1.0,), 0.0, 0.5)
        results = [
            self._result("h", h, Decision.ACCEPT, region),
            self._result("hc", complement(h), Decision.ACCEPT, region),
        ]
        report = check_coherence(results)
        assert any(v.rule == "invertibility" for v in report.violations)

    def test_consonance_violation_flagged_when_injected(self):
        region = EllipsoidRegion([0.0, 0.0, 0.0], np.diag([900.0] * 3), 7.8147, 0.95)
        hs = []
        for i, j in ((0, 1), (0, 2), (1, 2)):
            w = np.zeros(3)
            w[i], w[j] = 1.0, -1.0
            hs.append(Band(tuple(w), 0.0, 0.5))
        hs.append(MaxPairwiseBand(0.5, 3))
        results = decide_family(region, hs)
        assert all(r.decision is Decision.ACCEPT for r in results)
        # perturb the max-pairwise outcome only
        tampered = results[:3] + [
            DecisionRow(results[3].hypothesis_id, results[3].hypothesis,
                       Decision.AGNOSTIC, None, results[3].level, region)
        ]
        report = check_coherence(tampered)
        assert any(v.rule == "consonance" for v in report.violations)

    def test_propriety_violation_flagged(self):
        region = interval(0.0, 1.0)
        whole = Band((1.0,), 0.0, float("inf"))
        results = [self._result("all", whole, Decision.AGNOSTIC, region)]
        report = check_coherence(results)
        assert any(v.rule == "propriety" for v in report.violations)

    def test_mixed_regions_rejected(self):
        r1 = interval(0.0, 1.0)
        r2 = interval(0.0, 2.0)
        results = [
            self._result("a", BAND_HALF, Decision.ACCEPT, r1),
            self._result("b", BAND_HALF, Decision.ACCEPT, r2),
        ]
        with pytest.raises(MixedRegions):
            check_coherence(results)


class TestDecisionProperties:
    def test_invertibility_over_random_instances(self):
        rng = np.random.default_rng(13)
        for _ in range(300):
            if rng.random() < 0.5:
                lo = rng.uniform(-2, 2)
                region = interval(lo, lo + rng.uniform(0, 2))
                h = Band((1.0,), float(rng.uniform(-1, 1)), float(rng.uniform(0, 1)))
            else:
                region = random_spd_ellipsoid(rng)
                h = Band(tuple(rng.normal(size=3)), float(rng.uniform(-1, 1)),
                         float(rng.uniform(0, 2)))
            assert decide(region, complement(h)) is decide(region, h).invert()

    def test_monotonicity_on_decidable_pairs(self):
        rng = np.random.default_rng(21)
        from reactest import is_subset

        for _ in range(300):
            lo = rng.uniform(-1, 1)
            region = interval(lo, lo + rng.uniform(0, 1.5))
            h1 = Interval(*sorted(rng.uniform(-2, 2, 2)))
            h2 = Interval(*sorted(rng.uniform(-2, 2, 2)))
            if is_subset(h1, h2) is True:
                d1, d2 = decide(region, h1), decide(region, h2)
                assert d2.value <= d1.value

    def test_halfspace_intersection_consonance(self):
        # accepting theta <= b and theta >= a from one region forces
        # accepting a <= theta <= b
        rng = np.random.default_rng(55)
        seen_joint_accept = 0
        for _ in range(300):
            lo = rng.uniform(-1, 1)
            region = interval(lo, lo + rng.uniform(0, 1.5))
            a, b = sorted(rng.uniform(-2, 2, 2))
            upper = decide(region, HalfSpace((1.0,), b, "below"))
            lower = decide(region, HalfSpace((1.0,), a, "above"))
            if upper is Decision.ACCEPT and lower is Decision.ACCEPT:
                seen_joint_accept += 1
                assert decide(region, Interval(a, b)) is Decision.ACCEPT
        assert seen_joint_accept > 10

    def test_consonance_instance_from_shared_region(self):
        rng = np.random.default_rng(34)
        for _ in range(100):
            region = random_spd_ellipsoid(rng)
            delta = rng.uniform(0.2, 3.0)
            pair_decisions = []
            for i, j in ((0, 1), (0, 2), (1, 2)):
                w = np.zeros(3)
                w[i], w[j] = 1.0, -1.0
                pair_decisions.append(decide(region, Band(tuple(w), 0.0, delta)))
            dmax = decide(region, MaxPairwiseBand(delta, 3))
            if all(d is Decision.ACCEPT for d in pair_decisions):
                assert dmax is Decision.ACCEPT
            if any(d is Decision.REJECT for d in pair_decisions):
                assert dmax is Decision.REJECT
