"""Operating characteristics of a decision framework.

Probabilities of each decision conditional on a fixed true effect, swept
over effect and sample-size grids, and averaged over a planning-time
design prior (assurance). Includes a CONSIDER-probability cap check,
classification of decisions against a meaningful/non-meaningful scenario
label, and a per-arm sample-size search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .frameworks import Decision, Framework, ThresholdMap, observed_effect_thresholds
from .stats import (
    FLAT,
    Belief,
    EndpointModel,
    NormalBelief,
    chunk_sizes,
    expect_over_belief,
    standard_error,
    std_normal_cdf,
    substreams,
)

__all__ = [
    "SpreadKind",
    "DesignPrior",
    "OCPoint",
    "OCProfile",
    "SampleSizeResult",
    "conditional_oc",
    "simulate_oc",
    "oc_curve",
    "oc_vs_n",
    "consider_cap_check",
    "classify_decisions",
    "unconditional_oc",
    "find_sample_size",
    "draw_from_design_prior",
]

_DECISION_ORDER = (Decision.GO, Decision.STOP, Decision.CONSIDER, Decision.INTERMEDIATE)


class SpreadKind(str, Enum):
    SD = "sd"
    VARIANCE = "variance"


@dataclass(frozen=True)
class DesignPrior:
    """Planning-time belief about the true effect.

    The spread parameter is ambiguous in common "N(m, s)" notation, so its
    interpretation (SD or variance) must be stated explicitly. spread == 0
    is a point mass at the mean; closed-form and Monte Carlo paths accept
    it, density-based quadrature does not. An optional truncation interval
    restricts and renormalises the prior.
    """

    mean: float
    spread: float
    spread_interpretation: SpreadKind
    truncation: Optional[tuple[float, float]] = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mean) and math.isfinite(self.spread)):
            raise ValueError("design prior parameters must be finite")
        if self.spread < 0.0:
            raise ValueError(f"spread must be >= 0, got {self.spread}")
        if not isinstance(self.spread_interpretation, SpreadKind):
            raise ValueError("spread_interpretation must be a SpreadKind")
        if self.truncation is not None:
            lo, hi = self.truncation
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError(f"truncation must be a finite interval (lo < hi), got {self.truncation}")

    @property
    def sd(self) -> float:
        if self.spread_interpretation is SpreadKind.SD:
            return self.spread
        return math.sqrt(self.spread)

    def belief(self) -> NormalBelief:
        """Untruncated normal belief; rejects the degenerate point mass."""
        return NormalBelief(self.mean, self.sd)


@dataclass(frozen=True)
class OCPoint:
    """Decision probabilities at one scenario."""

    p_go: float
    p_stop: float
    p_consider: float
    p_intermediate: float = 0.0
    true_effect: Optional[float] = None
    n_per_arm: Optional[int] = None

    def __post_init__(self) -> None:
        probs = (self.p_go, self.p_stop, self.p_consider, self.p_intermediate)
        for p in probs:
            if not (math.isfinite(p) and -1e-12 <= p <= 1.0 + 1e-12):
                raise ValueError(f"decision probabilities must lie in [0, 1], got {probs}")
        if abs(sum(probs) - 1.0) > 1e-9:
            raise ValueError(f"decision probabilities must sum to 1, got {probs}")

    def probability(self, decision: Decision) -> float:
        return {
            Decision.GO: self.p_go,
            Decision.STOP: self.p_stop,
            Decision.CONSIDER: self.p_consider,
            Decision.INTERMEDIATE: self.p_intermediate,
        }[decision]


@dataclass(frozen=True)
class OCProfile:
    """OCPoints along a strictly increasing grid of one scenario axis."""

    axis: str
    grid: tuple[float, ...]
    points: tuple[OCPoint, ...]

    def __post_init__(self) -> None:
        if self.axis not in ("true_effect", "n_per_arm"):
            raise ValueError(f"axis must be 'true_effect' or 'n_per_arm', got {self.axis!r}")
        if not self.grid:
            raise ValueError("profile grid must be non-empty")
        if len(self.grid) != len(self.points):
            raise ValueError("grid and points must have equal length")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("profile grid must be strictly increasing")


def _point_from_masses(masses: dict[Decision, float], **scenario) -> OCPoint:
    clip = lambda p: min(1.0, max(0.0, p))
    return OCPoint(
        p_go=clip(masses[Decision.GO]),
        p_stop=clip(masses[Decision.STOP]),
        p_consider=clip(masses[Decision.CONSIDER]),
        p_intermediate=clip(masses[Decision.INTERMEDIATE]),
        **scenario,
    )


def _region_masses(tm: ThresholdMap, center: float, scale: float) -> dict[Decision, float]:
    """Mass of N(center, scale^2) falling in each decision region."""
    cum = [std_normal_cdf((b - center) / scale) for b in tm.breakpoints]
    edges = [0.0, *cum, 1.0]
    masses = {d: 0.0 for d in _DECISION_ORDER}
    for decision, lo, hi in zip(tm.regions, edges, edges[1:]):
        masses[decision] += hi - lo
    return masses


def conditional_oc(fw: Framework, model: EndpointModel, true_effect: float) -> OCPoint:
    """Decision probabilities given a fixed true effect (flat analysis prior)."""
    if not math.isfinite(true_effect):
        raise ValueError(f"true_effect must be finite, got {true_effect}")
    se = standard_error(model)
    tm = observed_effect_thresholds(fw, se, FLAT)
    return _point_from_masses(_region_masses(tm, true_effect, se), true_effect=true_effect)


def _bin_draws(tm: ThresholdMap, draws: np.ndarray) -> dict[Decision, int]:
    # Draws landing exactly on a breakpoint (probability zero for continuous
    # draws) fall to the upper region.
    idx = np.searchsorted(np.asarray(tm.breakpoints), draws, side="right")
    counts = {d: 0 for d in _DECISION_ORDER}
    binned = np.bincount(idx, minlength=len(tm.regions))
    for decision, c in zip(tm.regions, binned):
        counts[decision] += int(c)
    return counts


def simulate_oc(fw: Framework, model: EndpointModel, true_effect: float,
                analysis_prior: Belief = FLAT, n_sims: int = 100_000,
                seed: int = 0, n_chunks: int = 1) -> OCPoint:
    """Estimate decision probabilities by simulating trial estimates.

    Deterministic for a fixed (seed, n_sims, n_chunks).
    """
    if n_sims < 1:
        raise ValueError(f"n_sims must be >= 1, got {n_sims}")
    se = standard_error(model)
    tm = observed_effect_thresholds(fw, se, analysis_prior)
    counts = {d: 0 for d in _DECISION_ORDER}
    for rng, size in zip(substreams(seed, n_chunks), chunk_sizes(n_sims, n_chunks)):
        if size == 0:
            continue
        draws = true_effect + se * rng.standard_normal(size)
        for decision, c in _bin_draws(tm, draws).items():
            counts[decision] += c
    return _point_from_masses({d: counts[d] / n_sims for d in counts}, true_effect=true_effect)


def oc_curve(fw: Framework, model: EndpointModel,
             effect_grid: Sequence[float]) -> OCProfile:
    """Conditional operating characteristics against the true effect."""
    grid = tuple(float(x) for x in effect_grid)
    if not grid:
        raise ValueError("effect_grid must be non-empty")
    points = tuple(conditional_oc(fw, model, x) for x in grid)
    return OCProfile(axis="true_effect", grid=grid, points=points)


def oc_vs_n(fw: Framework, sigma: float, n_grid: Sequence[int],
            true_effect: float) -> OCProfile:
    """Conditional operating characteristics against the per-arm sample size."""
    ns = tuple(int(n) for n in n_grid)
    if not ns:
        raise ValueError("n_grid must be non-empty")
    points = []
    for n in ns:
        point = conditional_oc(fw, EndpointModel(sigma, n, n), true_effect)
        points.append(OCPoint(point.p_go, point.p_stop, point.p_consider,
                              point.p_intermediate, true_effect=true_effect, n_per_arm=n))
    return OCProfile(axis="n_per_arm", grid=tuple(float(n) for n in ns), points=tuple(points))


def consider_cap_check(profile: OCProfile, cap: float) -> tuple[bool, OCPoint]:
    """Whether CONSIDER probability stays within cap; returns the worst point."""
    if not (math.isfinite(cap) and 0.0 <= cap <= 1.0):
        raise ValueError(f"cap must lie in [0, 1], got {cap}")
    worst = max(profile.points, key=lambda pt: pt.p_consider)
    return worst.p_consider <= cap, worst


def classify_decisions(point: OCPoint, scenario_label: str) -> dict[str, float]:
    """Label decision probabilities as correct/incorrect for a scenario.

    scenario_label is "meaningful" (true effect clinically meaningful) or
    "non-meaningful"; CONSIDER and INTERMEDIATE are reported separately.
    """
    if scenario_label == "meaningful":
        classified = {"correct_go": point.p_go, "incorrect_stop": point.p_stop}
    elif scenario_label == "non-meaningful":
        classified = {"incorrect_go": point.p_go, "correct_stop": point.p_stop}
    else:
        raise ValueError(f"scenario_label must be 'meaningful' or 'non-meaningful', got {scenario_label!r}")
    classified["consider"] = point.p_consider
    classified["intermediate"] = point.p_intermediate
    return classified


def draw_from_design_prior(rng: np.random.Generator, prior: DesignPrior,
                           size: int) -> np.ndarray:
    """Sample true effects from a design prior, honouring truncation by rejection."""
    if prior.spread == 0.0:
        return np.full(size, prior.mean)
    if prior.truncation is None:
        return prior.mean + prior.sd * rng.standard_normal(size)
    lo, hi = prior.truncation
    out = np.empty(size)
    filled = 0
    for _ in range(10_000):
        if filled >= size:
            break
        cand = prior.mean + prior.sd * rng.standard_normal(max(size - filled, 1024))
        keep = cand[(cand >= lo) & (cand <= hi)]
        take = min(keep.size, size - filled)
        out[filled:filled + take] = keep[:take]
        filled += take
    else:
        raise ArithmeticError("design prior truncation region has negligible mass")
    return out


def _unconditional_closed_form(tm: ThresholdMap, model: EndpointModel,
                               prior: DesignPrior) -> OCPoint:
    # Marginally the estimate is normal around the prior mean with the
    # prior spread and the sampling error added in quadrature.
    predictive_sd = math.hypot(standard_error(model), prior.sd)
    return _point_from_masses(_region_masses(tm, prior.mean, predictive_sd))


def _unconditional_quadrature(fw: Framework, model: EndpointModel,
                              prior: DesignPrior) -> OCPoint:
    belief = prior.belief()
    masses = {}
    for decision in (Decision.GO, Decision.STOP, Decision.INTERMEDIATE):
        masses[decision] = expect_over_belief(
            lambda d, dec=decision: conditional_oc(fw, model, d).probability(dec),
            belief, truncation=prior.truncation)
    masses[Decision.CONSIDER] = 1.0 - sum(masses.values())
    return _point_from_masses(masses)


def _unconditional_monte_carlo(fw: Framework, model: EndpointModel, prior: DesignPrior,
                               n_sims: int, seed: int, n_chunks: int) -> OCPoint:
    se = standard_error(model)
    tm = observed_effect_thresholds(fw, se, FLAT)
    counts = {d: 0 for d in _DECISION_ORDER}
    for rng, size in zip(substreams(seed, n_chunks), chunk_sizes(n_sims, n_chunks)):
        if size == 0:
            continue
        effects = draw_from_design_prior(rng, prior, size)
        draws = effects + se * rng.standard_normal(size)
        for decision, c in _bin_draws(tm, draws).items():
            counts[decision] += c
    return _point_from_masses({d: counts[d] / n_sims for d in counts})


def unconditional_oc(fw: Framework, model: EndpointModel, prior: DesignPrior,
                     method: str = "closed_form", *, n_sims: int = 1_000_000,
                     seed: int = 0, n_chunks: int = 1) -> OCPoint:
    """Design-prior-averaged decision probabilities (flat analysis prior).

    method "closed_form" requires an untruncated prior; "quadrature"
    integrates the conditional probabilities against the prior density;
    "monte_carlo" draws the effect and then the estimate hierarchically.
    """
    if method == "closed_form":
        if prior.truncation is not None:
            raise ValueError("closed_form requires an untruncated design prior; use quadrature or monte_carlo")
        tm = observed_effect_thresholds(fw, standard_error(model), FLAT)
        return _unconditional_closed_form(tm, model, prior)
    if method == "quadrature":
        return _unconditional_quadrature(fw, model, prior)
    if method == "monte_carlo":
        if n_sims < 1:
            raise ValueError(f"n_sims must be >= 1, got {n_sims}")
        return _unconditional_monte_carlo(fw, model, prior, n_sims, seed, n_chunks)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class SampleSizeResult:
    """Outcome of a per-arm sample-size search; reachable is False when no n attains the target."""

    reachable: bool
    n_per_arm: Optional[int]
    p_go: Optional[float]


def find_sample_size(fw: Framework, sigma: float, true_effect: float,
                     target_p_go: float, n_range: tuple[int, int] = (2, 1000)) -> SampleSizeResult:
    """Smallest per-arm n whose conditional GO probability reaches the target.

    Uses bisection after numerically confirming that GO probability is
    monotone in n over the range, falling back to a linear scan otherwise.
    """
    if not (math.isfinite(target_p_go) and 0.0 < target_p_go < 1.0):
        raise ValueError(f"target_p_go must lie strictly in (0, 1), got {target_p_go}")
    n_lo, n_hi = int(n_range[0]), int(n_range[1])
    if n_lo < 2 or n_hi < n_lo:
        raise ValueError(f"n_range must satisfy 2 <= lo <= hi, got {n_range}")

    def p_go_at(n: int) -> float:
        return conditional_oc(fw, EndpointModel(sigma, n, n), true_effect).p_go

    probe_ns = sorted(set(int(round(x)) for x in np.linspace(n_lo, n_hi, 9)))
    probe_ps = [p_go_at(n) for n in probe_ns]
    monotone = all(b >= a - 1e-12 for a, b in zip(probe_ps, probe_ps[1:]))

    if monotone:
        if p_go_at(n_hi) < target_p_go:
            return SampleSizeResult(reachable=False, n_per_arm=None, p_go=None)
        if p_go_at(n_lo) >= target_p_go:
            return SampleSizeResult(True, n_lo, p_go_at(n_lo))
        lo, hi = n_lo, n_hi  # p_go(lo) < target <= p_go(hi)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if p_go_at(mid) >= target_p_go:
                hi = mid
            else:
                lo = mid
        return SampleSizeResult(True, hi, p_go_at(hi))

    for n in range(n_lo, n_hi + 1):
        p = p_go_at(n)
        if p >= target_p_go:
            return SampleSizeResult(True, n, p)
    return SampleSizeResult(reachable=False, n_per_arm=None, p_go=None)
