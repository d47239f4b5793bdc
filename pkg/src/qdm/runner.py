"""Shared command dispatch: one scenario in, one ResultTable out.

The CLI and the HTTP service both call run(), which is what guarantees
byte-identical tables for identical scenario inputs.
"""

from __future__ import annotations

from typing import Callable

from ._version import __version__
from .frameworks import (
    CombinedFramework,
    ConfidenceFramework,
    DualCriterionFramework,
    SignificanceFramework,
    condition_boundaries,
    decide,
    one_sided_p_value,
    posterior,
)
from .oc import conditional_oc, find_sample_size, oc_curve, oc_vs_n, unconditional_oc
from .ppos import (
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
from .scenario import CommandError, Diagnostic, Scenario
from .stats import FLAT, standard_error
from .tables import ResultTable

__all__ = ["COMMANDS", "run"]


def _missing(section: str, command: str) -> CommandError:
    return CommandError([Diagnostic(section, "missing_section",
                                    f"the '{command}' command needs the '{section}' section")])


def _require(scenario: Scenario, attr: str, section: str, command: str):
    value = getattr(scenario, attr)
    if value is None:
        raise _missing(section, command)
    return value


def _analysis_prior(scenario: Scenario):
    return scenario.analysis_prior if scenario.analysis_prior is not None else FLAT


def _evaluate(scenario: Scenario) -> tuple[str, tuple, tuple]:
    observed = _require(scenario, "observed_effect", "observed", "evaluate")
    fw = scenario.framework
    se = standard_error(scenario.endpoint)
    prior = _analysis_prior(scenario)
    decision = decide(fw, observed, se, prior)
    if isinstance(fw, SignificanceFramework):
        columns = ("observed_effect", "p_value", "decision")
        row = (observed, one_sided_p_value(observed, se), decision.value)
    else:
        post = posterior(prior, observed, se)
        if isinstance(fw, ConfidenceFramework):
            columns = ("observed_effect", "posterior_mean", "posterior_sd",
                       "confidence_above_mv", "confidence_below_mv", "decision")
            row = (observed, post.mean, post.sd, post.tail(fw.mv), post.cdf(fw.mv),
                   decision.value)
        elif isinstance(fw, CombinedFramework):
            columns = ("observed_effect", "posterior_mean", "posterior_sd",
                       "confidence_above_mv", "p_value", "decision")
            row = (observed, post.mean, post.sd, post.tail(fw.mv),
                   one_sided_p_value(observed, se), decision.value)
        else:
            columns = ("observed_effect", "posterior_mean", "posterior_sd",
                       "confidence_above_mv", "confidence_below_tv", "decision")
            row = (observed, post.mean, post.sd, post.tail(fw.mv), post.cdf(fw.tv),
                   decision.value)
    return "evaluate", columns, (row,)


def _thresholds(scenario: Scenario) -> tuple[str, tuple, tuple]:
    fw = scenario.framework
    se = standard_error(scenario.endpoint)
    c_go, c_stop, method = condition_boundaries(fw, se, _analysis_prior(scenario))
    overlap = c_stop > c_go
    policy = fw.both_met_policy.value if isinstance(fw, DualCriterionFramework) else None
    columns = ("c_go", "c_stop", "overlap", "both_met_policy", "method")
    return "thresholds", columns, ((c_go, c_stop, overlap, policy, method),)


def _profile_rows(profile) -> tuple:
    rows = []
    for axis_value, point in zip(profile.grid, profile.points):
        value = int(axis_value) if profile.axis == "n_per_arm" else float(axis_value)
        rows.append((value, point.p_go, point.p_stop, point.p_consider, point.p_intermediate))
    return tuple(rows)


_PROFILE_COLUMNS = ("axis_value", "p_go", "p_stop", "p_consider", "p_intermediate")


def _oc(scenario: Scenario) -> tuple[str, tuple, tuple]:
    profile = oc_curve(scenario.framework, scenario.endpoint, scenario.effect_grid())
    return "oc_profile", _PROFILE_COLUMNS, _profile_rows(profile)


def _oc_vs_n(scenario: Scenario) -> tuple[str, tuple, tuple]:
    true_effect = scenario.oc_vs_n_effect()
    if true_effect is None:
        raise _missing("grids.true_effect", "oc-vs-n")
    profile = oc_vs_n(scenario.framework, scenario.endpoint.sigma, scenario.n_grid(),
                      true_effect)
    return "oc_profile", _PROFILE_COLUMNS, _profile_rows(profile)


def _unconditional(scenario: Scenario) -> tuple[str, tuple, tuple]:
    prior = _require(scenario, "design_prior", "design_prior", "unconditional")
    fw, model = scenario.framework, scenario.endpoint
    rows = []
    if prior.truncation is None:
        point = unconditional_oc(fw, model, prior, "closed_form")
        rows.append(("closed_form", point.p_go, point.p_stop, point.p_consider,
                     point.p_intermediate))
    point = unconditional_oc(fw, model, prior, "quadrature")
    rows.append(("quadrature", point.p_go, point.p_stop, point.p_consider,
                 point.p_intermediate))
    if scenario.mc is not None:
        point = unconditional_oc(fw, model, prior, "monte_carlo",
                                 n_sims=scenario.mc.n_sims, seed=scenario.mc.seed,
                                 n_chunks=scenario.mc.n_chunks)
        rows.append(("monte_carlo", point.p_go, point.p_stop, point.p_consider,
                     point.p_intermediate))
    columns = ("method", "p_go", "p_stop", "p_consider", "p_intermediate")
    return "unconditional", columns, tuple(rows)


def _sample_size(scenario: Scenario) -> tuple[str, tuple, tuple]:
    request = _require(scenario, "sample_size", "sample_size", "sample-size")
    result = find_sample_size(scenario.framework, scenario.endpoint.sigma,
                              request.true_effect, request.target_p_go,
                              (request.n_min, request.n_max))
    columns = ("true_effect", "target_p_go", "reachable", "n_per_arm", "p_go")
    row = (request.true_effect, request.target_p_go, result.reachable,
           result.n_per_arm, result.p_go)
    return "sample_size", columns, (row,)


def _ppos(scenario: Scenario) -> tuple[str, tuple, tuple]:
    program = _require(scenario, "program", "program", "ppos")
    observed = _require(scenario, "observed_effect", "observed", "ppos")
    value = ppos(observed, program)
    decision = evaluate_program_decision(value, program)
    c3 = phase3_cutoff(program.ph3_rule, program.ph3_model)
    columns = ("observed_effect", "c3", "ppos", "decision")
    return "ppos", columns, ((observed, c3, value, decision.value),)


def _ppos_curve(scenario: Scenario) -> tuple[str, tuple, tuple]:
    program = _require(scenario, "program", "program", "ppos-curve")
    curves = ppos_curve(program, scenario.ph3_n_list(), scenario.observed_grid())
    rows = []
    for curve in curves:
        for observed, value, decision in zip(curve.observed, curve.values, curve.decisions):
            rows.append((curve.ph3_n_per_arm, curve.c3, observed, value, decision.value))
    columns = ("ph3_n_per_arm", "c3", "observed_effect", "ppos", "decision")
    return "ppos_curve", columns, tuple(rows)


def _assurance(scenario: Scenario) -> tuple[str, tuple, tuple]:
    program = _require(scenario, "program", "program", "assurance")
    prior = _require(scenario, "design_prior", "design_prior", "assurance")
    c3 = phase3_cutoff(program.ph3_rule, program.ph3_model)
    rows = []
    if prior.truncation is None:
        rows.append(("closed_form", program_assurance(prior, program, "closed_form"), c3))
    if prior.spread > 0.0:
        rows.append(("quadrature", program_assurance(prior, program, "quadrature"), c3))
    if scenario.mc is not None:
        rows.append(("monte_carlo",
                     program_assurance_mc(prior, program, scenario.mc.n_sims,
                                          scenario.mc.seed, scenario.mc.n_chunks), c3))
    columns = ("method", "assurance", "c3")
    return "assurance", columns, tuple(rows)


def _conditional_assurance(scenario: Scenario) -> tuple[str, tuple, tuple]:
    program = _require(scenario, "program", "program", "conditional-assurance")
    prior = _require(scenario, "design_prior", "design_prior", "conditional-assurance")
    c3 = phase3_cutoff(program.ph3_rule, program.ph3_model)
    q = phase2_go_cutoff(program)
    rows = []
    if prior.truncation is None:
        rows.append(("bivariate", conditional_assurance(prior, program),
                     program_assurance(prior, program, "closed_form"), q, c3))
    if scenario.mc is not None:
        estimate = conditional_assurance_mc(prior, program, scenario.mc.n_sims,
                                            scenario.mc.seed, scenario.mc.n_chunks)
        rows.append(("monte_carlo", estimate.value,
                     program_assurance_mc(prior, program, scenario.mc.n_sims,
                                          scenario.mc.seed, scenario.mc.n_chunks), q, c3))
    if not rows:
        raise CommandError([Diagnostic(
            "design_prior.truncation", "missing_section",
            "conditional assurance for a truncated design prior needs an mc section "
            "(the bivariate form applies only untruncated)")])
    columns = ("method", "conditional_assurance", "program_assurance",
               "phase2_go_cutoff", "c3")
    return "conditional_assurance", columns, tuple(rows)


_BUILDERS: dict[str, Callable[[Scenario], tuple[str, tuple, tuple]]] = {
    "evaluate": _evaluate,
    "thresholds": _thresholds,
    "oc": _oc,
    "oc-vs-n": _oc_vs_n,
    "unconditional": _unconditional,
    "sample-size": _sample_size,
    "ppos": _ppos,
    "ppos-curve": _ppos_curve,
    "assurance": _assurance,
    "conditional-assurance": _conditional_assurance,
}

COMMANDS = tuple(_BUILDERS)


def run(command: str, scenario: Scenario) -> ResultTable:
    """Execute one command against a validated scenario."""
    try:
        builder = _BUILDERS[command]
    except KeyError:
        raise ValueError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    kind, columns, rows = builder(scenario)
    provenance = {
        "command": command,
        "scenario_sha256": scenario.sha256,
        "seed": scenario.mc.seed if scenario.mc is not None else None,
        "version": __version__,
    }
    return ResultTable(kind=kind, columns=columns, rows=rows, provenance=provenance)
