"""Conditional operating characteristics: how often the rule decides well.

Sweeps the true effect and the per-arm sample size, checks the CONSIDER
cap, classifies decisions against meaningful / non-meaningful scenarios,
and searches for the sample size that delivers a wanted GO probability.
"""

import numpy as np

from qdm import (
    DualCriterionFramework,
    EndpointModel,
    classify_decisions,
    conditional_oc,
    consider_cap_check,
    find_sample_size,
    oc_curve,
    oc_vs_n,
    simulate_oc,
)

fw = DualCriterionFramework(mv=2.0, tv=3.0, go_confidence=0.70, stop_confidence=0.90)
model = EndpointModel(sigma=6.0, n_treatment=80, n_control=80)

print("Decision probabilities against the true effect (80/arm):")
print("  effect   GO      CONSIDER  STOP")
for delta in (0.0, 1.0, 2.0, 2.5, 3.0, 4.0):
    pt = conditional_oc(fw, model, delta)
    print(f"  {delta:5.1f}  {pt.p_go:7.3f}  {pt.p_consider:7.3f}  {pt.p_stop:7.3f}")
print("  at the minimum value the GO rate is pinned at 30% by the rule itself,")
print("  and at the target value the STOP rate is pinned at 10%\n")

# The simulator reproduces the analytic numbers (same rule, drawn estimates).
sim = simulate_oc(fw, model, 3.0, n_sims=200_000, seed=20201108)
exact = conditional_oc(fw, model, 3.0)
print(f"Simulated GO rate at effect 3: {sim.p_go:.4f} "
      f"(analytic {exact.p_go:.4f}, 200k seeded draws)\n")

# Full profile over the effect grid, with the CONSIDER cap check.
grid = np.arange(0.0, 4.0001, 0.05)
profile = oc_curve(fw, model, grid)
ok, worst = consider_cap_check(profile, cap=0.30)
print(f"CONSIDER cap over effects 0..4: max {worst.p_consider:.3f} "
      f"at effect {worst.true_effect:.2f} -> {'within' if ok else 'exceeds'} the 30% cap\n")

# Correct and incorrect decisions once the scenario is labelled.
print("Correct/incorrect classification:")
meaningful = classify_decisions(conditional_oc(fw, model, 3.0), "meaningful")
null = classify_decisions(conditional_oc(fw, model, 0.0), "non-meaningful")
print(f"  true effect 3 (meaningful): correct GO {meaningful['correct_go']:.3f}, "
      f"incorrect STOP {meaningful['incorrect_stop']:.3f}, "
      f"consider {meaningful['consider']:.3f}")
print(f"  no effect (non-meaningful): incorrect GO {null['incorrect_go']:.3f}, "
      f"correct STOP {null['correct_stop']:.3f}, consider {null['consider']:.3f}\n")

# Sample-size view at the target effect: the STOP rate stays at 10% by
# construction while GO and CONSIDER trade off.
profile_n = oc_vs_n(fw, sigma=6.0, n_grid=range(50, 151, 10), true_effect=3.0)
print("Against the per-arm sample size (true effect 3):")
print("  n/arm   GO      CONSIDER  STOP")
for n, pt in zip(profile_n.grid, profile_n.points):
    print(f"  {int(n):5d}  {pt.p_go:7.3f}  {pt.p_consider:7.3f}  {pt.p_stop:7.3f}")

for target in (0.70, 0.75, 0.80):
    result = find_sample_size(fw, sigma=6.0, true_effect=3.0, target_p_go=target,
                              n_range=(2, 1000))
    print(f"\nSmallest n/arm with GO probability >= {target:.0%}: {result.n_per_arm} "
          f"(achieves {result.p_go:.3f})")
