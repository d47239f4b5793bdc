"""Two-stage program view: decide Phase II by predicting Phase III.

Phase III (200/arm here) will claim success only with a one-sided
significant result at 2.5% and 80% posterior confidence that the effect
beats the minimum value. At the end of Phase II the rule GOes when the
predictive probability of that Phase III success exceeds 70% and STOPs
below 30%.
"""

import numpy as np

from qdm import (
    DesignPrior,
    EndpointModel,
    Phase3GoRule,
    ProgramSpec,
    SpreadKind,
    conditional_assurance,
    conditional_assurance_mc,
    evaluate_program_decision,
    phase2_go_cutoff,
    phase3_cutoff,
    ppos,
    ppos_curve,
    program_assurance,
    program_assurance_mc,
    standard_error,
)

ph2 = EndpointModel(sigma=6.0, n_treatment=80, n_control=80)
ph3 = EndpointModel(sigma=6.0, n_treatment=200, n_control=200)
rule = Phase3GoRule(alpha=0.025, mv=2.0, relevance_confidence=0.80)
spec = ProgramSpec(ph2_model=ph2, ph3_model=ph3, ph3_rule=rule)

c3 = phase3_cutoff(rule, ph3)
se3 = standard_error(ph3)
print(f"Phase III SE = {se3:.3f}; the GO rule needs the estimate above "
      f"{c3:.3f} points")
print("  (the relevance clause binds here; bare significance would only need "
      f"{1.959964 * se3:.3f})\n")

print("Predictive probability of Phase III success by Phase II result:")
print("  observed   PPoS    decision")
for observed in (1.5, 2.0, 2.5, 3.0, 3.1, 3.5):
    value = ppos(observed, spec)
    decision = evaluate_program_decision(value, spec)
    print(f"  {observed:7.1f}  {value:7.3f}  {decision.value}")
print(f"  the GO cut is reached from an observed difference of about "
      f"{phase2_go_cutoff(spec):.3f}\n")

# One curve per candidate Phase III size; bigger trials steepen the curve
# and lower the significance hurdle, but the relevance clause keeps the
# half-way point anchored near the minimum value side.
grid = np.arange(0.0, 4.0001, 0.5)
print("PPoS against the Phase II result for three Phase III sizes:")
header = "  observed " + "".join(f"  n3={c.ph3_n_per_arm:<4d}"
                                 for c in ppos_curve(spec, (100, 200, 300), (0.0, 1.0)))
print(header)
curves = ppos_curve(spec, (100, 200, 300), grid)
for i, observed in enumerate(grid):
    row = "".join(f"  {curve.values[i]:7.3f}" for curve in curves)
    print(f"  {observed:7.1f} {row}")
for curve in curves:
    print(f"  n3={curve.ph3_n_per_arm}: curve crosses 1/2 exactly at its cutoff "
          f"{curve.c3:.3f}")

# Planning-time risk: average the Phase III success probability over the
# design prior, with and without conditioning on a Phase II GO.
prior = DesignPrior(mean=3.2, spread=2.0, spread_interpretation=SpreadKind.SD)
assurance = program_assurance(prior, spec)
assurance_mc = program_assurance_mc(prior, spec, n_sims=1_000_000, seed=11)
conditional = conditional_assurance(prior, spec)
conditional_mc = conditional_assurance_mc(prior, spec, n_sims=1_000_000, seed=12)
print(f"\nProgram assurance (Phase III GO averaged over the prior): "
      f"{assurance:.4f}  [MC check {assurance_mc:.4f}]")
print(f"Conditional on a Phase II GO first: {conditional:.4f}  "
      f"[MC check {conditional_mc.value:.4f}, "
      f"conditioning on {conditional_mc.phase2_go_draws:,} of "
      f"{conditional_mc.n_sims:,} draws]")
print("Phase II de-risks the program: the conditional probability is the")
print("higher of the two because both phases respond to the same true effect")
