"""Quantitative decision-making for clinical study design.

Build GO/STOP/CONSIDER decision frameworks, back-solve them onto the
observed-effect scale, evaluate their conditional and design-prior-averaged
operating characteristics, and assess two-stage programs through the
predictive probability of Phase III success.
"""

from ._version import __version__
from .frameworks import (
    CombinedFramework,
    ConfidenceFramework,
    Decision,
    DualCriterionFramework,
    Framework,
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
from .oc import (
    DesignPrior,
    OCPoint,
    OCProfile,
    SampleSizeResult,
    SpreadKind,
    classify_decisions,
    conditional_oc,
    consider_cap_check,
    find_sample_size,
    oc_curve,
    oc_vs_n,
    simulate_oc,
    unconditional_oc,
)
from .ppos import (
    ConditionalAssuranceEstimate,
    Phase3GoRule,
    PposCurve,
    ProgramSpec,
    conditional_assurance,
    conditional_assurance_mc,
    evaluate_program_decision,
    phase2_go_cutoff,
    phase3_cutoff,
    ppos,
    ppos_curve,
    program_assurance,
    program_assurance_mc,
)
from .runner import COMMANDS, run
from .scenario import (
    CommandError,
    Diagnostic,
    Scenario,
    ScenarioError,
    load_scenario,
    scenario_to_dict,
)
from .stats import (
    FLAT,
    Belief,
    EndpointModel,
    FlatPrior,
    NormalBelief,
    bivariate_upper_tail,
    expect_over_belief,
    posterior,
    standard_error,
    std_normal_cdf,
    std_normal_pdf,
    std_normal_quantile,
)
from .tables import ResultTable, emit, parse_table
