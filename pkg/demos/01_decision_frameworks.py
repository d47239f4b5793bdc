"""Building decision frameworks and reading them on the observed-effect scale.

A Phase II study in mild-to-moderate Alzheimer's disease: the endpoint is a
change in an 11-item cognitive total score, difference of means between
arms, assumed normal with per-subject SD 6 (a back-solved working value; see
the README). The product profile sets a minimum value of 2 points and a
target value of 3 points.
"""

import numpy as np

from qdm import (
    FLAT,
    CombinedFramework,
    DualCriterionFramework,
    EndpointModel,
    SignificanceFramework,
    credible_interval,
    decide,
    decision_thresholds,
    evaluate_significance,
    one_sided_p_value,
    posterior,
    standard_error,
)

model = EndpointModel(sigma=6.0, n_treatment=80, n_control=80)
se = standard_error(model)
print(f"Design: 80/arm, sigma 6  ->  SE of the difference in means = {se:.4f}\n")

# The dual-criterion rule: GO needs 70% confidence the effect beats the
# minimum value, STOP needs 90% confidence it falls short of the target.
fw = DualCriterionFramework(mv=2.0, tv=3.0, go_confidence=0.70, stop_confidence=0.90)

print("Decisions for a few observed differences (flat analysis prior):")
for observed in (1.5, 2.0, 2.6, 3.4):
    post = posterior(FLAT, observed, se)
    decision = decide(fw, observed, se)
    lo40, _ = credible_interval(post, 0.40)
    _, hi80 = credible_interval(post, 0.80)
    print(f"  observed {observed:4.1f}: P(effect>2) = {post.tail(2.0):.3f}, "
          f"P(effect<3) = {post.cdf(3.0):.3f}  ->  {decision.value:8s} "
          f"(40% CrI lower bound {lo40:5.2f}, 80% CrI upper bound {hi80:5.2f})")

# The same rule collapsed to cutoffs on the observed difference.
tm = decision_thresholds(fw, model)
print(f"\nBack-solved boundaries: STOP below {tm.stop_boundary:.2f}, "
      f"GO above {tm.go_boundary:.2f}, CONSIDER between")

# Equivalent interval reading: GO exactly when the two-sided 40% credible
# interval sits above the minimum value, STOP exactly when the two-sided
# 80% interval sits below the target.
print("\nInterval reading agrees with the probability reading on a grid:")
agreements = 0
grid = np.arange(0.0, 4.01, 0.01)
for observed in grid:
    post = posterior(FLAT, float(observed), se)
    lo, _ = credible_interval(post, 0.40)
    _, hi = credible_interval(post, 0.80)
    assert (post.tail(2.0) > 0.70) == (lo > 2.0)
    assert (post.cdf(3.0) > 0.90) == (hi < 3.0)
    agreements += 1
print(f"  checked at {agreements} observed values, no disagreements")

# Other rule shapes for comparison.
significance = SignificanceFramework(alpha=0.025)
combined = CombinedFramework(mv=2.0, confidence=0.70, alpha=0.025)
print("\nThe same data under other frameworks (observed difference 2.0):")
p = one_sided_p_value(2.0, se)
print(f"  significance only (alpha 2.5%): p = {p:.4f} -> "
      f"{evaluate_significance(significance, p).value}")
print(f"  combined significance + relevance: -> {decide(combined, 2.0, se).value}")
print("  a significant result is not automatically a GO once relevance counts")

# Precise studies can meet both criteria at once; the policy label decides.
big = EndpointModel(sigma=6.0, n_treatment=300, n_control=300)
tm_big = decision_thresholds(fw, big)
print(f"\nWith 300/arm the criteria overlap between "
      f"{tm_big.breakpoints[0]:.3f} and {tm_big.breakpoints[1]:.3f}; "
      f"the default policy maps that both-met zone to STOP")
