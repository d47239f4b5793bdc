"""Decision frameworks mapping study evidence to GO / STOP / CONSIDER.

Four rule variants are supported, all pre-specified before the study:

* significance: GO on a one-sided significant result alone.
* confidence: posterior confidence that the effect clears a minimum value.
* combined: the confidence criterion and the significance test jointly.
* dual_criterion: confidence above a minimum value (GO evidence) against
  confidence below a target value (STOP evidence), with a configurable
  decision when both criteria are met at once.

Every rule reduces, for a fixed analysis prior, to intervals on the
observed-effect axis; ThresholdMap is that back-solved representation.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Union

from .stats import (
    FLAT,
    Belief,
    EndpointModel,
    FlatPrior,
    NormalBelief,
    posterior,
    standard_error,
    std_normal_cdf,
    std_normal_quantile,
)

__all__ = [
    "Decision",
    "SignificanceFramework",
    "ConfidenceFramework",
    "CombinedFramework",
    "DualCriterionFramework",
    "Framework",
    "ThresholdMap",
    "one_sided_p_value",
    "evaluate_significance",
    "evaluate_confidence",
    "evaluate_dual",
    "evaluate_combined",
    "decide",
    "decision_thresholds",
    "observed_effect_thresholds",
    "condition_boundaries",
    "credible_interval",
]


class Decision(str, Enum):
    GO = "GO"
    STOP = "STOP"
    CONSIDER = "CONSIDER"
    INTERMEDIATE = "INTERMEDIATE"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


def _check_prob_open(name: str, value: float) -> None:
    if not (math.isfinite(value) and 0.0 < value < 1.0):
        raise ValueError(f"{name} must lie strictly in (0, 1), got {value}")


def _check_confidence(name: str, value: float) -> None:
    if not (math.isfinite(value) and 0.5 < value < 1.0):
        raise ValueError(f"{name} must lie strictly in (0.5, 1), got {value}")


@dataclass(frozen=True)
class SignificanceFramework:
    """GO if the one-sided p-value is below alpha, otherwise STOP."""

    alpha: float

    def __post_init__(self) -> None:
        _check_prob_open("alpha", self.alpha)


@dataclass(frozen=True)
class ConfidenceFramework:
    """Single reference value: confidence above mv drives GO, below mv drives STOP."""

    mv: float
    go_confidence: float
    stop_confidence: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mv):
            raise ValueError(f"mv must be finite, got {self.mv}")
        _check_confidence("go_confidence", self.go_confidence)
        _check_confidence("stop_confidence", self.stop_confidence)


@dataclass(frozen=True)
class CombinedFramework:
    """GO requires both posterior confidence that the effect exceeds mv and p < alpha."""

    mv: float
    confidence: float
    alpha: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mv):
            raise ValueError(f"mv must be finite, got {self.mv}")
        _check_confidence("confidence", self.confidence)
        _check_prob_open("alpha", self.alpha)


@dataclass(frozen=True)
class DualCriterionFramework:
    """Minimum-value GO evidence against target-value STOP evidence.

    GO when confidence that the effect exceeds mv is above go_confidence;
    STOP when confidence that it falls short of tv is above stop_confidence;
    both met at once resolves to both_met_policy (STOP by default); neither
    met is CONSIDER.
    """

    mv: float
    tv: float
    go_confidence: float
    stop_confidence: float
    both_met_policy: Decision = Decision.STOP

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mv) and math.isfinite(self.tv)):
            raise ValueError("mv and tv must be finite")
        if not self.tv > self.mv:
            raise ValueError(f"tv must exceed mv, got tv={self.tv}, mv={self.mv}")
        _check_confidence("go_confidence", self.go_confidence)
        _check_confidence("stop_confidence", self.stop_confidence)
        if not isinstance(self.both_met_policy, Decision):
            raise ValueError(f"both_met_policy must be a Decision, got {self.both_met_policy!r}")


Framework = Union[SignificanceFramework, ConfidenceFramework, CombinedFramework,
                  DualCriterionFramework]


def one_sided_p_value(observed_effect: float, se: float) -> float:
    """One-sided p-value against 'no improvement' (effect <= 0)."""
    if not math.isfinite(observed_effect):
        raise ValueError(f"observed_effect must be finite, got {observed_effect}")
    if not (math.isfinite(se) and se > 0.0):
        raise ValueError(f"se must be finite and > 0, got {se}")
    return 1.0 - std_normal_cdf(observed_effect / se)


def evaluate_significance(fw: SignificanceFramework, p: float) -> Decision:
    """GO iff p < alpha; the boundary p == alpha is STOP."""
    if not (math.isfinite(p) and 0.0 <= p <= 1.0):
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return Decision.GO if p < fw.alpha else Decision.STOP


def _require_proper(post: Belief) -> NormalBelief:
    if isinstance(post, FlatPrior):
        raise ValueError("a proper posterior is required, not FLAT")
    return post


def evaluate_confidence(fw: ConfidenceFramework, post: Belief) -> Decision:
    post = _require_proper(post)
    go_met = post.tail(fw.mv) > fw.go_confidence
    stop_met = post.cdf(fw.mv) > fw.stop_confidence
    if go_met:
        return Decision.GO
    if stop_met:
        return Decision.STOP
    return Decision.CONSIDER


def evaluate_dual(fw: DualCriterionFramework, post: Belief) -> Decision:
    """Strict comparisons throughout, so exact boundary evidence meets neither criterion."""
    post = _require_proper(post)
    go_met = post.tail(fw.mv) > fw.go_confidence
    stop_met = post.cdf(fw.tv) > fw.stop_confidence
    if go_met and stop_met:
        return fw.both_met_policy
    if go_met:
        return Decision.GO
    if stop_met:
        return Decision.STOP
    return Decision.CONSIDER


def evaluate_combined(fw: CombinedFramework, post: Belief, p: float) -> Decision:
    """GO iff both conditions hold, STOP iff both fail, CONSIDER otherwise."""
    post = _require_proper(post)
    if not (math.isfinite(p) and 0.0 <= p <= 1.0):
        raise ValueError(f"p must lie in [0, 1], got {p}")
    confident = post.tail(fw.mv) > fw.confidence
    significant = p < fw.alpha
    if confident and significant:
        return Decision.GO
    if not confident and not significant:
        return Decision.STOP
    return Decision.CONSIDER


def decide(fw: Framework, observed_effect: float, se: float,
           analysis_prior: Belief = FLAT) -> Decision:
    """Evaluate any framework directly from an observed effect and its SE."""
    if isinstance(fw, SignificanceFramework):
        return evaluate_significance(fw, one_sided_p_value(observed_effect, se))
    post = posterior(analysis_prior, observed_effect, se)
    if isinstance(fw, ConfidenceFramework):
        return evaluate_confidence(fw, post)
    if isinstance(fw, DualCriterionFramework):
        return evaluate_dual(fw, post)
    if isinstance(fw, CombinedFramework):
        return evaluate_combined(fw, post, one_sided_p_value(observed_effect, se))
    raise TypeError(f"unsupported framework: {fw!r}")


@dataclass(frozen=True)
class ThresholdMap:
    """Decision regions on the observed-effect axis.

    breakpoints are strictly increasing; regions holds the decision on each
    open interval between them (len(breakpoints) + 1 entries), and
    at_breakpoints the decision exactly at each breakpoint. Breakpoint
    decisions follow the strict-inequality reading of the criteria, so the
    map agrees with direct rule evaluation everywhere.
    """

    breakpoints: tuple[float, ...]
    regions: tuple[Decision, ...]
    at_breakpoints: tuple[Decision, ...]
    method: str = "analytic"

    def __post_init__(self) -> None:
        if len(self.regions) != len(self.breakpoints) + 1:
            raise ValueError("regions must have one more entry than breakpoints")
        if len(self.at_breakpoints) != len(self.breakpoints):
            raise ValueError("at_breakpoints must match breakpoints")
        if any(b2 <= b1 for b1, b2 in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError(f"breakpoints must be strictly increasing, got {self.breakpoints}")
        if self.method not in ("analytic", "bisection"):
            raise ValueError(f"unknown method {self.method!r}")

    def decision_at(self, observed_effect: float) -> Decision:
        for bp, at in zip(self.breakpoints, self.at_breakpoints):
            if observed_effect == bp:
                return at
        return self.regions[bisect_right(self.breakpoints, observed_effect)]

    @property
    def go_boundary(self) -> float | None:
        """Infimum of the maximal all-GO upper region, None if the top region is not GO."""
        i = len(self.regions) - 1
        while i >= 0 and self.regions[i] is Decision.GO:
            i -= 1
        if i == len(self.regions) - 1 or i < 0:
            return None
        return self.breakpoints[i]

    @property
    def stop_boundary(self) -> float | None:
        """Supremum of the maximal all-STOP lower region, None if the bottom region is not STOP."""
        i = 0
        while i < len(self.regions) and self.regions[i] is Decision.STOP:
            i += 1
        if i == 0 or i > len(self.breakpoints):
            return None
        return self.breakpoints[i - 1]


def _posterior_mean_fn(se: float, prior: Belief) -> Callable[[float], float]:
    if isinstance(prior, FlatPrior):
        return lambda x: x
    w_prior = 1.0 / (prior.sd * prior.sd)
    w_data = 1.0 / (se * se)
    total = w_prior + w_data
    return lambda x: (w_prior * prior.mean + w_data * x) / total


def _bisect_root(fn: Callable[[float], float], center: float, scale: float) -> float:
    """Root of an increasing function, bracketing outward from center."""
    lo, hi = center - scale, center + scale
    f_lo, f_hi = fn(lo), fn(hi)
    for _ in range(120):
        if f_lo <= 0.0 <= f_hi:
            break
        if f_lo > 0.0:
            lo -= scale
            f_lo = fn(lo)
        if f_hi < 0.0:
            hi += scale
            f_hi = fn(hi)
        scale *= 2.0
    else:
        raise ArithmeticError("failed to bracket the criterion boundary")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if fn(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _exceed_boundary(reference: float, confidence: float, se: float, prior: Belief) -> float:
    """Observed effect at which P(effect > reference | data) equals confidence."""
    z = std_normal_quantile(confidence)
    if isinstance(prior, FlatPrior):
        return reference + z * se
    post_sd = posterior(prior, 0.0, se).sd
    mean_of = _posterior_mean_fn(se, prior)
    target = reference + z * post_sd
    return _bisect_root(lambda x: mean_of(x) - target, reference + z * se, max(se, post_sd))


def _below_boundary(reference: float, confidence: float, se: float, prior: Belief) -> float:
    """Observed effect at which P(effect < reference | data) equals confidence."""
    z = std_normal_quantile(confidence)
    if isinstance(prior, FlatPrior):
        return reference - z * se
    post_sd = posterior(prior, 0.0, se).sd
    mean_of = _posterior_mean_fn(se, prior)
    target = reference - z * post_sd
    return _bisect_root(lambda x: mean_of(x) - target, reference - z * se, max(se, post_sd))


def condition_boundaries(fw: Framework, se: float,
                         analysis_prior: Belief = FLAT) -> tuple[float, float, str]:
    """(c_go, c_stop, method) for a framework's criteria on the observed-effect axis.

    c_go is the boundary above which every GO condition holds; c_stop the
    boundary below which every STOP condition holds. For the dual-criterion
    rule c_stop may exceed c_go, in which case the interval between them is
    the both-criteria-met region. method is "bisection" when an informative
    analysis prior forced a numeric solve, else "analytic".
    """
    if not (math.isfinite(se) and se > 0.0):
        raise ValueError(f"se must be finite and > 0, got {se}")
    flat = isinstance(analysis_prior, FlatPrior)
    if isinstance(fw, SignificanceFramework):
        t = std_normal_quantile(1.0 - fw.alpha) * se
        return t, t, "analytic"
    method = "analytic" if flat else "bisection"
    if isinstance(fw, ConfidenceFramework):
        c_go = _exceed_boundary(fw.mv, fw.go_confidence, se, analysis_prior)
        c_stop = _below_boundary(fw.mv, fw.stop_confidence, se, analysis_prior)
        return c_go, c_stop, method
    if isinstance(fw, DualCriterionFramework):
        c_go = _exceed_boundary(fw.mv, fw.go_confidence, se, analysis_prior)
        c_stop = _below_boundary(fw.tv, fw.stop_confidence, se, analysis_prior)
        return c_go, c_stop, method
    if isinstance(fw, CombinedFramework):
        t_conf = _exceed_boundary(fw.mv, fw.confidence, se, analysis_prior)
        t_sig = std_normal_quantile(1.0 - fw.alpha) * se
        return max(t_conf, t_sig), min(t_conf, t_sig), method
    raise TypeError(f"unsupported framework: {fw!r}")


def observed_effect_thresholds(fw: Framework, se: float,
                               analysis_prior: Belief = FLAT) -> ThresholdMap:
    """Back-solve any framework onto decision regions of the observed effect."""
    c_go, c_stop, method = condition_boundaries(fw, se, analysis_prior)
    if isinstance(fw, SignificanceFramework):
        return ThresholdMap((c_go,), (Decision.STOP, Decision.GO), (Decision.STOP,), method)
    if isinstance(fw, (ConfidenceFramework, CombinedFramework)):
        # STOP below the lower boundary, GO above the upper, CONSIDER between.
        # Exactly at the lower boundary a combined rule fails both of its GO
        # conditions (STOP); a confidence rule meets neither criterion.
        at_lo = Decision.STOP if isinstance(fw, CombinedFramework) else Decision.CONSIDER
        lo, hi = min(c_go, c_stop), max(c_go, c_stop)
        if lo == hi:
            return ThresholdMap((lo,), (Decision.STOP, Decision.GO), (at_lo,), method)
        return ThresholdMap((lo, hi), (Decision.STOP, Decision.CONSIDER, Decision.GO),
                            (at_lo, Decision.CONSIDER), method)
    if isinstance(fw, DualCriterionFramework):
        if c_stop > c_go:
            # Both criteria hold between the boundaries; exactly on them only
            # the other criterion holds, matching strict rule evaluation.
            return ThresholdMap((c_go, c_stop),
                                (Decision.STOP, fw.both_met_policy, Decision.GO),
                                (Decision.STOP, Decision.GO), method)
        if c_stop == c_go:
            return ThresholdMap((c_go,), (Decision.STOP, Decision.GO),
                                (Decision.CONSIDER,), method)
        return ThresholdMap((c_stop, c_go),
                            (Decision.STOP, Decision.CONSIDER, Decision.GO),
                            (Decision.CONSIDER, Decision.CONSIDER), method)
    raise TypeError(f"unsupported framework: {fw!r}")


def decision_thresholds(fw: DualCriterionFramework, model: EndpointModel) -> ThresholdMap:
    """Observed-effect decision regions for a dual-criterion rule, flat analysis prior."""
    if not isinstance(fw, DualCriterionFramework):
        raise TypeError("decision_thresholds is defined for dual-criterion frameworks")
    return observed_effect_thresholds(fw, standard_error(model), FLAT)


def credible_interval(post: Belief, level: float) -> tuple[float, float]:
    """Equal-tailed credible interval of the given two-sided level."""
    post = _require_proper(post)
    if not (math.isfinite(level) and 0.0 < level < 1.0):
        raise ValueError(f"level must lie strictly in (0, 1), got {level}")
    z = std_normal_quantile(0.5 * (1.0 + level))
    return post.mean - z * post.sd, post.mean + z * post.sd
