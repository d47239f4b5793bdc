"""Two-stage program metrics: Phase III GO cutoff, predictive probability
of Phase III success from Phase II data, program-level assurance, and the
conditional assurance given a Phase II GO.

Phase III success requires a one-sided significant result and posterior
confidence that the effect clears the minimum value; with a flat analysis
prior both clauses reduce to the estimate exceeding a single cutoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .frameworks import Decision, DualCriterionFramework, decision_thresholds
from .oc import DesignPrior, draw_from_design_prior
from .stats import (
    EndpointModel,
    bivariate_upper_tail,
    chunk_sizes,
    expect_over_belief,
    standard_error,
    std_normal_cdf,
    std_normal_quantile,
    substreams,
)

__all__ = [
    "Phase3GoRule",
    "ProgramSpec",
    "PposCurve",
    "ConditionalAssuranceEstimate",
    "phase3_cutoff",
    "ppos",
    "ppos_curve",
    "evaluate_program_decision",
    "phase2_go_cutoff",
    "program_assurance",
    "program_assurance_mc",
    "conditional_assurance",
    "conditional_assurance_mc",
]


@dataclass(frozen=True)
class Phase3GoRule:
    """Phase III GO criteria: one-sided significance plus clinical relevance."""

    alpha: float
    mv: float
    relevance_confidence: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha) and 0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must lie strictly in (0, 1), got {self.alpha}")
        if not math.isfinite(self.mv):
            raise ValueError(f"mv must be finite, got {self.mv}")
        if not (math.isfinite(self.relevance_confidence) and 0.5 <= self.relevance_confidence < 1.0):
            raise ValueError(
                f"relevance_confidence must lie in [0.5, 1), got {self.relevance_confidence}")


@dataclass(frozen=True)
class ProgramSpec:
    """Phase II design, Phase III design and GO rule, and the predictive-probability cuts."""

    ph2_model: EndpointModel
    ph3_model: EndpointModel
    ph3_rule: Phase3GoRule
    go_cut: float = 0.70
    stop_cut: float = 0.30

    def __post_init__(self) -> None:
        for name, cut in (("go_cut", self.go_cut), ("stop_cut", self.stop_cut)):
            if not (math.isfinite(cut) and 0.0 < cut < 1.0):
                raise ValueError(f"{name} must lie strictly in (0, 1), got {cut}")
        if not self.stop_cut < self.go_cut:
            raise ValueError(
                f"stop_cut must be below go_cut, got {self.stop_cut} >= {self.go_cut}")


def phase3_cutoff(rule: Phase3GoRule, ph3_model: EndpointModel) -> float:
    """Estimate cutoff equivalent to the Phase III GO rule (flat analysis prior).

    Significance demands the estimate exceed z_{1-alpha} * SE; relevance
    demands it exceed mv + z_R * SE; GO requires both, hence the max.
    """
    se3 = standard_error(ph3_model)
    significance = std_normal_quantile(1.0 - rule.alpha) * se3
    if rule.relevance_confidence == 0.5:
        relevance = rule.mv
    else:
        relevance = rule.mv + std_normal_quantile(rule.relevance_confidence) * se3
    return max(significance, relevance)


def _predictive_sd(spec: ProgramSpec) -> float:
    return math.hypot(standard_error(spec.ph2_model), standard_error(spec.ph3_model))


def ppos(observed_ph2: float, spec: ProgramSpec) -> float:
    """Predictive probability of a Phase III GO given the Phase II estimate.

    Flat Phase II analysis prior: the Phase III estimate is predictively
    normal around the Phase II estimate with the two standard errors added
    in quadrature.
    """
    if not math.isfinite(observed_ph2):
        raise ValueError(f"observed_ph2 must be finite, got {observed_ph2}")
    c3 = phase3_cutoff(spec.ph3_rule, spec.ph3_model)
    return std_normal_cdf((observed_ph2 - c3) / _predictive_sd(spec))


def evaluate_program_decision(ppos_value: float, spec: ProgramSpec) -> Decision:
    """GO above go_cut, STOP below stop_cut, CONSIDER between (cuts inclusive)."""
    if not (math.isfinite(ppos_value) and 0.0 <= ppos_value <= 1.0):
        raise ValueError(f"ppos_value must lie in [0, 1], got {ppos_value}")
    if ppos_value > spec.go_cut:
        return Decision.GO
    if ppos_value < spec.stop_cut:
        return Decision.STOP
    return Decision.CONSIDER


@dataclass(frozen=True)
class PposCurve:
    """Predictive probability of Phase III success against the Phase II estimate."""

    ph3_n_per_arm: int
    c3: float
    observed: tuple[float, ...]
    values: tuple[float, ...]
    decisions: tuple[Decision, ...]


def ppos_curve(spec: ProgramSpec, ph3_n_list: Sequence[int],
               observed_grid: Sequence[float]) -> tuple[PposCurve, ...]:
    """One predictive-probability curve per candidate Phase III size."""
    grid = tuple(float(x) for x in observed_grid)
    if not grid:
        raise ValueError("observed_grid must be non-empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("observed_grid must be strictly increasing")
    sizes = tuple(int(n) for n in ph3_n_list)
    if not sizes:
        raise ValueError("ph3_n_list must be non-empty")
    curves = []
    for n in sizes:
        variant = ProgramSpec(
            ph2_model=spec.ph2_model,
            ph3_model=EndpointModel(spec.ph3_model.sigma, n, n),
            ph3_rule=spec.ph3_rule,
            go_cut=spec.go_cut,
            stop_cut=spec.stop_cut,
        )
        values = tuple(ppos(x, variant) for x in grid)
        decisions = tuple(evaluate_program_decision(v, variant) for v in values)
        curves.append(PposCurve(
            ph3_n_per_arm=n,
            c3=phase3_cutoff(variant.ph3_rule, variant.ph3_model),
            observed=grid,
            values=values,
            decisions=decisions,
        ))
    return tuple(curves)


def phase2_go_cutoff(spec: ProgramSpec,
                     phase2_framework: Optional[DualCriterionFramework] = None) -> float:
    """Phase II estimate above which the program rule says GO.

    By default the GO event is the predictive probability exceeding go_cut;
    alternatively a dual-criterion Phase II rule's GO boundary can be used.
    """
    if phase2_framework is not None:
        boundary = decision_thresholds(phase2_framework, spec.ph2_model).go_boundary
        if boundary is None:
            raise ValueError("phase2 framework has no GO region")
        return boundary
    c3 = phase3_cutoff(spec.ph3_rule, spec.ph3_model)
    return c3 + std_normal_quantile(spec.go_cut) * _predictive_sd(spec)


def program_assurance(prior: DesignPrior, spec: ProgramSpec, method: str = "auto") -> float:
    """Unconditional probability of meeting the Phase III GO criteria.

    Closed form for an untruncated design prior; truncated priors integrate
    the conditional Phase III GO probability against the prior density.
    """
    c3 = phase3_cutoff(spec.ph3_rule, spec.ph3_model)
    se3 = standard_error(spec.ph3_model)
    if method == "auto":
        method = "quadrature" if prior.truncation is not None else "closed_form"
    if method == "closed_form":
        if prior.truncation is not None:
            raise ValueError("closed_form requires an untruncated design prior")
        return std_normal_cdf((prior.mean - c3) / math.hypot(prior.sd, se3))
    if method == "quadrature":
        return expect_over_belief(lambda d: std_normal_cdf((d - c3) / se3),
                                  prior.belief(), truncation=prior.truncation)
    raise ValueError(f"unknown method {method!r}")


def program_assurance_mc(prior: DesignPrior, spec: ProgramSpec, n_sims: int,
                         seed: int, n_chunks: int = 1) -> float:
    """Monte Carlo estimate of program assurance (hierarchical draws)."""
    if n_sims < 1:
        raise ValueError(f"n_sims must be >= 1, got {n_sims}")
    c3 = phase3_cutoff(spec.ph3_rule, spec.ph3_model)
    se3 = standard_error(spec.ph3_model)
    hits = 0
    for rng, size in zip(substreams(seed, n_chunks), chunk_sizes(n_sims, n_chunks)):
        if size == 0:
            continue
        effects = draw_from_design_prior(rng, prior, size)
        estimates = effects + se3 * rng.standard_normal(size)
        hits += int((estimates > c3).sum())
    return hits / n_sims


def conditional_assurance(prior: DesignPrior, spec: ProgramSpec,
                          phase2_framework: Optional[DualCriterionFramework] = None) -> float:
    """Probability of meeting the Phase III GO criteria given a Phase II GO.

    Under an untruncated design prior the two phase estimates are jointly
    normal with the prior variance as covariance; the conditional is a
    bivariate upper tail over the marginal Phase II GO probability. A point
    mass (spread 0) makes the phases independent, so the conditional equals
    the marginal Phase III GO probability.
    """
    if prior.truncation is not None:
        raise ValueError("the bivariate form requires an untruncated design prior; "
                         "use conditional_assurance_mc for truncated priors")
    c3 = phase3_cutoff(spec.ph3_rule, spec.ph3_model)
    se2 = standard_error(spec.ph2_model)
    se3 = standard_error(spec.ph3_model)
    q = phase2_go_cutoff(spec, phase2_framework)
    tau = prior.sd
    if tau == 0.0:
        return std_normal_cdf((prior.mean - c3) / se3)
    s2 = math.hypot(tau, se2)
    s3 = math.hypot(tau, se3)
    rho = (tau * tau) / (s2 * s3)
    a = (q - prior.mean) / s2
    b = (c3 - prior.mean) / s3
    phase2_go = 1.0 - std_normal_cdf(a)
    if phase2_go <= 0.0:
        raise ValueError("Phase II GO has negligible probability under this design prior")
    return bivariate_upper_tail(a, b, rho) / phase2_go


@dataclass(frozen=True)
class ConditionalAssuranceEstimate:
    """Monte Carlo conditional assurance with the conditioning sample size."""

    value: float
    phase2_go_draws: int
    n_sims: int


def conditional_assurance_mc(prior: DesignPrior, spec: ProgramSpec, n_sims: int,
                             seed: int, n_chunks: int = 1,
                             phase2_framework: Optional[DualCriterionFramework] = None,
                             ) -> ConditionalAssuranceEstimate:
    """Hierarchical Monte Carlo: draw the effect, then independent phase estimates."""
    if n_sims < 1:
        raise ValueError(f"n_sims must be >= 1, got {n_sims}")
    c3 = phase3_cutoff(spec.ph3_rule, spec.ph3_model)
    se2 = standard_error(spec.ph2_model)
    se3 = standard_error(spec.ph3_model)
    q = phase2_go_cutoff(spec, phase2_framework)
    go2 = 0
    both = 0
    for rng, size in zip(substreams(seed, n_chunks), chunk_sizes(n_sims, n_chunks)):
        if size == 0:
            continue
        effects = draw_from_design_prior(rng, prior, size)
        est2 = effects + se2 * rng.standard_normal(size)
        est3 = effects + se3 * rng.standard_normal(size)
        passed2 = est2 > q
        go2 += int(passed2.sum())
        both += int((passed2 & (est3 > c3)).sum())
    if go2 == 0:
        raise ArithmeticError("no Phase II GO draws; increase n_sims or revisit the design prior")
    return ConditionalAssuranceEstimate(value=both / go2, phase2_go_draws=go2, n_sims=n_sims)
