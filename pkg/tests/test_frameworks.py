"""Framework evaluation and observed-effect threshold back-solving.

The key equivalence under test: for every framework the back-solved
ThresholdMap assigns exactly the decision that direct rule evaluation
gives, on a grid of observed effects that includes the breakpoints.
"""

import math

import numpy as np
import pytest

from qdm.frameworks import (
    CombinedFramework,
    ConfidenceFramework,
    Decision,
    DualCriterionFramework,
    SignificanceFramework,
    ThresholdMap,
    condition_boundaries,
    credible_interval,
    decide,
    decision_thresholds,
    evaluate_combined,
    evaluate_confidence,
    evaluate_dual,
    evaluate_significance,
    observed_effect_thresholds,
    one_sided_p_value,
)
from qdm.stats import FLAT, EndpointModel, NormalBelief, posterior, standard_error, \
    std_normal_quantile

EXAMPLE_FW = DualCriterionFramework(mv=2.0, tv=3.0, go_confidence=0.70, stop_confidence=0.90)
EXAMPLE_MODEL = EndpointModel(6.0, 80, 80)
SE_80 = standard_error(EXAMPLE_MODEL)  # 0.9486832981


class TestPValue:
    def test_zero_effect(self):
        assert one_sided_p_value(0.0, 1.3) == 0.5

    def test_critical_value(self):
        assert one_sided_p_value(1.95996 * 0.7, 0.7) == pytest.approx(0.025, abs=1e-4)

    def test_large_negative_effect(self):
        assert one_sided_p_value(-10 * 0.5, 0.5) > 1 - 1e-15

    def test_rejects_bad_se(self):
        with pytest.raises(ValueError):
            one_sided_p_value(1.0, 0.0)


class TestSignificance:
    def test_go_below_alpha(self):
        assert evaluate_significance(SignificanceFramework(0.05), 0.049) is Decision.GO

    def test_boundary_is_stop(self):
        assert evaluate_significance(SignificanceFramework(0.05), 0.05) is Decision.STOP

    def test_stop(self):
        assert evaluate_significance(SignificanceFramework(0.025), 0.5) is Decision.STOP

    def test_never_consider(self):
        fw = SignificanceFramework(0.1)
        for p in np.linspace(0, 1, 101):
            assert evaluate_significance(fw, float(p)) in (Decision.GO, Decision.STOP)

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            evaluate_significance(SignificanceFramework(0.05), 1.2)

    def test_equivalent_to_critical_value(self):
        fw = SignificanceFramework(0.025)
        c = std_normal_quantile(0.975) * SE_80
        for est in np.arange(-1.0, 4.01, 0.1):
            decision = evaluate_significance(fw, one_sided_p_value(float(est), SE_80))
            assert (decision is Decision.GO) == (est > c)


class TestDualCriterion:
    def test_go_stop_consider_examples(self):
        # Posterior means straddle the 2.50 / 1.78 boundaries.
        assert evaluate_dual(EXAMPLE_FW, NormalBelief(2.6, 0.9487)) is Decision.GO
        assert evaluate_dual(EXAMPLE_FW, NormalBelief(1.5, 0.9487)) is Decision.STOP
        assert evaluate_dual(EXAMPLE_FW, NormalBelief(2.0, 0.9487)) is Decision.CONSIDER

    def test_rejects_flat_posterior(self):
        with pytest.raises(ValueError):
            evaluate_dual(EXAMPLE_FW, FLAT)

    def test_invariants(self):
        with pytest.raises(ValueError):
            DualCriterionFramework(2.0, 2.0, 0.7, 0.9)
        with pytest.raises(ValueError):
            DualCriterionFramework(2.0, 3.0, 0.5, 0.9)
        with pytest.raises(ValueError):
            DualCriterionFramework(2.0, 3.0, 0.7, 1.0)

    def test_both_met_policy_routing(self):
        # A precise posterior concentrated between mv and tv meets both
        # criteria; the configured policy decides the label.
        post = NormalBelief(2.5, 0.12)
        for policy in Decision:
            fw = DualCriterionFramework(2.0, 3.0, 0.70, 0.90, both_met_policy=policy)
            assert evaluate_dual(fw, post) is policy


class TestConfidenceFramework:
    def test_three_zones(self):
        fw = ConfidenceFramework(mv=2.0, go_confidence=0.8, stop_confidence=0.8)
        assert evaluate_confidence(fw, NormalBelief(4.0, 1.0)) is Decision.GO
        assert evaluate_confidence(fw, NormalBelief(0.0, 1.0)) is Decision.STOP
        assert evaluate_confidence(fw, NormalBelief(2.0, 1.0)) is Decision.CONSIDER

    def test_criteria_cannot_both_hold(self):
        fw = ConfidenceFramework(mv=1.0, go_confidence=0.6, stop_confidence=0.6)
        for mean in np.arange(-3, 5.1, 0.2):
            for sd in (0.05, 0.5, 2.0):
                post = NormalBelief(float(mean), sd)
                assert not (post.tail(1.0) > 0.6 and post.cdf(1.0) > 0.6)


class TestCombined:
    def test_three_branches(self):
        fw = CombinedFramework(mv=2.0, confidence=0.7, alpha=0.025)
        se = SE_80
        # Strong effect: both conditions hold.
        assert decide(fw, 3.5, se) is Decision.GO
        # Confident about relevance but not significant is impossible here
        # (c_alpha < the confidence boundary), so exercise the reverse:
        # significant but not confidently above mv.
        est = 2.0  # p ~ 0.018 < alpha, but P(effect > 2) = 0.5 < 0.7
        assert one_sided_p_value(est, se) < 0.025
        assert decide(fw, est, se) is Decision.CONSIDER
        assert decide(fw, 0.5, se) is Decision.STOP

    def test_consider_when_only_confidence_holds(self):
        # A large alpha with a strict confidence level makes the significance
        # clause the binding one.
        fw = CombinedFramework(mv=0.0, confidence=0.95, alpha=0.01)
        se = 1.0
        est = 2.0  # P(effect > 0) = 0.977 > 0.95; p = 0.0228 > 0.01
        post = posterior(FLAT, est, se)
        assert evaluate_combined(fw, post, one_sided_p_value(est, se)) is Decision.CONSIDER


class TestDecisionThresholds:
    def test_example_boundaries(self):
        tm = decision_thresholds(EXAMPLE_FW, EXAMPLE_MODEL)
        assert tm.breakpoints[1] == pytest.approx(2.50, abs=0.005)
        assert tm.breakpoints[0] == pytest.approx(1.78, abs=0.005)
        assert tm.regions == (Decision.STOP, Decision.CONSIDER, Decision.GO)
        assert tm.method == "analytic"
        assert tm.go_boundary == tm.breakpoints[1]
        assert tm.stop_boundary == tm.breakpoints[0]

    def test_go_boundary_approaches_mv(self):
        fw = DualCriterionFramework(2.0, 3.0, 0.500001, 0.90)
        c_go, _, _ = condition_boundaries(fw, SE_80)
        assert abs(c_go - 2.0) < 1e-3

    def test_small_study_boundaries(self):
        # Frozen arithmetic: se = 6*sqrt(2/10) = 2.6833, c_go = 3.4071,
        # c_stop = -0.4388; no both-met region.
        tm = decision_thresholds(EXAMPLE_FW, EndpointModel(6.0, 10, 10))
        assert tm.breakpoints[1] == pytest.approx(3.4071, abs=1e-3)
        assert tm.breakpoints[0] == pytest.approx(-0.4388, abs=1e-3)
        c_go, c_stop, _ = condition_boundaries(EXAMPLE_FW, standard_error(EndpointModel(6.0, 10, 10)))
        assert c_stop < c_go

    @pytest.mark.parametrize("policy", list(Decision))
    def test_overlap_map_matches_brute_force(self, policy):
        # 300/arm shrinks the SE enough that both criteria can hold at once.
        fw = DualCriterionFramework(2.0, 3.0, 0.70, 0.90, both_met_policy=policy)
        model = EndpointModel(6.0, 300, 300)
        se = standard_error(model)
        tm = decision_thresholds(fw, model)
        c_go, c_stop, _ = condition_boundaries(fw, se)
        assert c_stop > c_go  # overlap case
        grid = list(np.arange(1.5, 3.01, 0.01)) + list(tm.breakpoints)
        for est in grid:
            assert tm.decision_at(float(est)) is evaluate_dual(
                fw, posterior(FLAT, float(est), se))

    def test_map_matches_brute_force_all_kinds(self):
        se = SE_80
        frameworks = [
            EXAMPLE_FW,
            SignificanceFramework(0.025),
            ConfidenceFramework(2.0, 0.7, 0.8),
            CombinedFramework(2.0, 0.7, 0.025),
        ]
        for fw in frameworks:
            tm = observed_effect_thresholds(fw, se)
            grid = list(np.arange(-2.0, 6.01, 0.05)) + list(tm.breakpoints)
            for est in grid:
                assert tm.decision_at(float(est)) is decide(fw, float(est), se), (fw, est)

    def test_map_with_informative_prior_matches_brute_force(self):
        se = SE_80
        prior = NormalBelief(0.5, 2.0)
        for fw in (EXAMPLE_FW, ConfidenceFramework(2.0, 0.7, 0.8),
                   CombinedFramework(2.0, 0.7, 0.025)):
            tm = observed_effect_thresholds(fw, se, prior)
            assert tm.method == "bisection"
            grid = list(np.arange(-2.0, 7.01, 0.05)) + list(tm.breakpoints)
            for est in grid:
                assert tm.decision_at(float(est)) is decide(fw, float(est), se, prior), (fw, est)

    def test_bisection_agrees_with_linear_solve(self):
        # With a normal prior the posterior mean is linear in the estimate,
        # so the criterion boundary has a closed form to check against.
        se = SE_80
        prior = NormalBelief(0.5, 2.0)
        w0, w1 = 1 / prior.sd ** 2, 1 / se ** 2
        post_sd = math.sqrt(1 / (w0 + w1))
        target = 2.0 + std_normal_quantile(0.70) * post_sd
        expected = (target * (w0 + w1) - w0 * prior.mean) / w1
        c_go, _, method = condition_boundaries(EXAMPLE_FW, se, prior)
        assert method == "bisection"
        assert c_go == pytest.approx(expected, abs=1e-9)

    def test_monotone_decision_sequence(self):
        tm = decision_thresholds(EXAMPLE_FW, EXAMPLE_MODEL)
        order = {Decision.STOP: 0, Decision.CONSIDER: 1, Decision.GO: 2}
        seq = [order[tm.decision_at(float(x))] for x in np.arange(-1, 5, 0.01)]
        assert all(b >= a for a, b in zip(seq, seq[1:]))

    def test_rejects_non_dual(self):
        with pytest.raises(TypeError):
            decision_thresholds(SignificanceFramework(0.05), EXAMPLE_MODEL)

    def test_threshold_map_validation(self):
        with pytest.raises(ValueError):
            ThresholdMap((2.0, 1.0), (Decision.STOP, Decision.CONSIDER, Decision.GO),
                         (Decision.CONSIDER, Decision.CONSIDER))
        with pytest.raises(ValueError):
            ThresholdMap((1.0,), (Decision.STOP,), (Decision.CONSIDER,))


class TestIntermediateReachability:
    def test_only_dual_with_intermediate_policy(self):
        se = standard_error(EndpointModel(6.0, 300, 300))
        grid = np.arange(-1.0, 5.01, 0.02)
        frameworks = [
            SignificanceFramework(0.025),
            ConfidenceFramework(2.0, 0.7, 0.8),
            CombinedFramework(2.0, 0.7, 0.025),
            EXAMPLE_FW,
        ]
        seen = {decide(fw, float(x), se) for fw in frameworks for x in grid}
        assert Decision.INTERMEDIATE not in seen
        fw = DualCriterionFramework(2.0, 3.0, 0.70, 0.90,
                                    both_met_policy=Decision.INTERMEDIATE)
        decisions = {decide(fw, float(x), se) for x in grid}
        assert Decision.INTERMEDIATE in decisions


class TestCredibleInterval:
    def test_standard_normal_95(self):
        lo, hi = credible_interval(NormalBelief(0.0, 1.0), 0.95)
        assert lo == pytest.approx(-1.960, abs=1e-3)
        assert hi == pytest.approx(1.960, abs=1e-3)

    def test_degenerates_to_mean(self):
        lo, hi = credible_interval(NormalBelief(1.7, 2.0), 1e-9)
        assert lo == pytest.approx(1.7, abs=1e-6)
        assert hi == pytest.approx(1.7, abs=1e-6)

    def test_go_criterion_equals_40pct_interval(self):
        # P(effect > mv) > 0.70 exactly when the two-sided 40% interval's
        # lower bound clears mv.
        for mean in np.arange(1.0, 4.05, 0.05):
            post = NormalBelief(float(mean), SE_80)
            lo, _ = credible_interval(post, 2 * 0.70 - 1)
            assert (post.tail(2.0) > 0.70) == (lo > 2.0)

    def test_stop_criterion_equals_2y_minus_1_interval(self):
        for y in (0.6, 0.75, 0.9, 0.95):
            for mean in np.arange(0.0, 5.05, 0.05):
                post = NormalBelief(float(mean), SE_80)
                _, hi = credible_interval(post, 2 * y - 1)
                assert (post.cdf(3.0) > y) == (hi < 3.0)

    def test_rejects_flat_and_bad_level(self):
        with pytest.raises(ValueError):
            credible_interval(FLAT, 0.95)
        with pytest.raises(ValueError):
            credible_interval(NormalBelief(0, 1), 1.0)
