"""Scenario documents: the single input format of the CLI and the service.

A scenario is a JSON object with explicit schema_version "1". Decision
criteria are governance artifacts, so parsing is strict: unknown fields are
rejected, the framework union needs its "kind" discriminant, a design
prior's spread interpretation must be stated, and every domain invariant is
checked at load time with a located diagnostic.

Sections (beyond "schema_version", "endpoint" and "framework" these are
optional; see the README for the field-by-field reference):

    endpoint        sigma, n_treatment, n_control
    framework       kind = significance | confidence | combined | dual_criterion
    observed        effect (used by evaluate and ppos)
    analysis_prior  mean, sd (omit for the flat analysis prior)
    design_prior    mean, spread, spread_interpretation, truncation
    program         ph3, ph3_rule, go_cut, stop_cut
    grids           effect_grid, n_grid, observed_grid, ph3_n_list, true_effect
    sample_size     true_effect, target_p_go, n_min, n_max
    mc              n_sims, seed, n_chunks
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

from .frameworks import (
    CombinedFramework,
    ConfidenceFramework,
    Decision,
    DualCriterionFramework,
    Framework,
    SignificanceFramework,
)
from .oc import DesignPrior, SpreadKind
from .ppos import Phase3GoRule, ProgramSpec
from .stats import EndpointModel, NormalBelief

__all__ = [
    "SCHEMA_VERSION",
    "Diagnostic",
    "ScenarioError",
    "CommandError",
    "GridSpec",
    "Grids",
    "McSettings",
    "SampleSizeRequest",
    "Scenario",
    "load_scenario",
    "scenario_to_dict",
]

SCHEMA_VERSION = "1"

DEFAULT_PH3_N_LIST = (100, 200, 300)


@dataclass(frozen=True)
class Diagnostic:
    """One located validation finding."""

    path: str
    kind: str
    message: str

    def __str__(self) -> str:
        where = self.path or "<document>"
        return f"{where}: {self.message} [{self.kind}]"


class ScenarioError(ValueError):
    """Raised when a scenario document fails validation."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class CommandError(ScenarioError):
    """Raised when a valid scenario lacks a section a command needs."""


@dataclass(frozen=True)
class GridSpec:
    """Inclusive start/stop/step range, or an explicit value list."""

    start: Optional[float] = None
    stop: Optional[float] = None
    step: Optional[float] = None
    values: Optional[tuple[float, ...]] = None

    def materialize(self, integer: bool = False) -> tuple:
        if self.values is not None:
            vals = self.values
        else:
            count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
            vals = tuple(round(self.start + i * self.step, 12) for i in range(count))
        if integer:
            return tuple(int(v) for v in vals)
        return tuple(float(v) for v in vals)


DEFAULT_EFFECT_GRID = GridSpec(start=0.0, stop=4.0, step=0.05)
DEFAULT_N_GRID = GridSpec(start=50, stop=150, step=1)
DEFAULT_OBSERVED_GRID = GridSpec(start=0.0, stop=4.0, step=0.05)


@dataclass(frozen=True)
class Grids:
    effect_grid: Optional[GridSpec] = None
    n_grid: Optional[GridSpec] = None
    observed_grid: Optional[GridSpec] = None
    ph3_n_list: Optional[tuple[int, ...]] = None
    true_effect: Optional[float] = None


@dataclass(frozen=True)
class McSettings:
    n_sims: int
    seed: int
    n_chunks: int = 1


@dataclass(frozen=True)
class SampleSizeRequest:
    true_effect: float
    target_p_go: float
    n_min: int = 2
    n_max: int = 1000


@dataclass(frozen=True)
class Scenario:
    """A fully validated scenario document."""

    endpoint: EndpointModel
    framework: Framework
    observed_effect: Optional[float] = None
    analysis_prior: Optional[NormalBelief] = None
    design_prior: Optional[DesignPrior] = None
    program: Optional[ProgramSpec] = None
    grids: Optional[Grids] = None
    sample_size: Optional[SampleSizeRequest] = None
    mc: Optional[McSettings] = None
    sha256: str = dataclasses.field(default="", compare=False)

    def effect_grid(self) -> tuple[float, ...]:
        spec = self.grids.effect_grid if self.grids else None
        return (spec or DEFAULT_EFFECT_GRID).materialize()

    def n_grid(self) -> tuple[int, ...]:
        spec = self.grids.n_grid if self.grids else None
        return (spec or DEFAULT_N_GRID).materialize(integer=True)

    def observed_grid(self) -> tuple[float, ...]:
        spec = self.grids.observed_grid if self.grids else None
        return (spec or DEFAULT_OBSERVED_GRID).materialize()

    def ph3_n_list(self) -> tuple[int, ...]:
        if self.grids and self.grids.ph3_n_list is not None:
            return self.grids.ph3_n_list
        return DEFAULT_PH3_N_LIST

    def oc_vs_n_effect(self) -> Optional[float]:
        if self.grids and self.grids.true_effect is not None:
            return self.grids.true_effect
        if isinstance(self.framework, DualCriterionFramework):
            return self.framework.tv
        return None

    def with_seed(self, seed: int) -> "Scenario":
        if self.mc is None:
            raise ValueError("scenario has no mc section to carry a seed override")
        return dataclasses.replace(self, mc=dataclasses.replace(self.mc, seed=seed))

    def to_dict(self) -> dict:
        return scenario_to_dict(self)


def _normalize_numbers(value: Any) -> Any:
    # JSON does not distinguish 6 from 6.0, so the content hash must not
    # either (writers in other languages drop the trailing ".0").
    if isinstance(value, bool):
        return value
    if isinstance(value, float) and value.is_integer() and abs(value) < 2.0 ** 53:
        return int(value)
    if isinstance(value, dict):
        return {k: _normalize_numbers(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_normalize_numbers(v) for v in value]
    return value


def _canonical_hash(raw: Any) -> str:
    canonical = json.dumps(_normalize_numbers(raw), sort_keys=True,
                           separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class _Validator:
    def __init__(self) -> None:
        self.diagnostics: list[Diagnostic] = []

    def error(self, path: str, kind: str, message: str) -> None:
        self.diagnostics.append(Diagnostic(path, kind, message))

    # -- primitive readers -------------------------------------------------

    def object(self, value: Any, path: str) -> Optional[dict]:
        if not isinstance(value, dict):
            self.error(path, "wrong_type", f"expected an object, got {type(value).__name__}")
            return None
        return value

    def unknown(self, obj: dict, path: str, allowed: set[str]) -> None:
        for key in obj:
            if key not in allowed:
                self.error(_join(path, key), "unknown_field",
                           f"unknown field; allowed fields: {', '.join(sorted(allowed))}")

    def number(self, obj: dict, path: str, key: str, *, required: bool = True,
               default: Any = None, integer: bool = False,
               minimum: Optional[float] = None, exclusive_minimum: Optional[float] = None,
               maximum: Optional[float] = None, exclusive_maximum: Optional[float] = None):
        full = _join(path, key)
        if key not in obj:
            if required:
                self.error(full, "missing_field", "required field is missing")
            return default
        value = obj[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.error(full, "wrong_type", f"expected a number, got {type(value).__name__}")
            return default
        if not math.isfinite(value):
            self.error(full, "invalid_value", "value must be finite")
            return default
        if integer and int(value) != value:
            self.error(full, "wrong_type", f"expected an integer, got {value}")
            return default
        if minimum is not None and value < minimum:
            self.error(full, "invalid_value", f"must be >= {minimum}, got {value}")
            return default
        if exclusive_minimum is not None and value <= exclusive_minimum:
            self.error(full, "invalid_value", f"must be > {exclusive_minimum}, got {value}")
            return default
        if maximum is not None and value > maximum:
            self.error(full, "invalid_value", f"must be <= {maximum}, got {value}")
            return default
        if exclusive_maximum is not None and value >= exclusive_maximum:
            self.error(full, "invalid_value", f"must be < {exclusive_maximum}, got {value}")
            return default
        return int(value) if integer else float(value)

    def string(self, obj: dict, path: str, key: str, *, required: bool = True,
               default: Optional[str] = None, choices: Optional[set[str]] = None):
        full = _join(path, key)
        if key not in obj:
            if required:
                self.error(full, "missing_field", "required field is missing")
            return default
        value = obj[key]
        if not isinstance(value, str):
            self.error(full, "wrong_type", f"expected a string, got {type(value).__name__}")
            return default
        if choices is not None and value not in choices:
            self.error(full, "invalid_value",
                       f"must be one of {', '.join(sorted(choices))}; got {value!r}")
            return default
        return value

    # -- sections -----------------------------------------------------------

    def endpoint(self, obj: Any, path: str) -> Optional[EndpointModel]:
        section = self.object(obj, path)
        if section is None:
            return None
        self.unknown(section, path, {"sigma", "n_treatment", "n_control"})
        sigma = self.number(section, path, "sigma", exclusive_minimum=0.0)
        n_t = self.number(section, path, "n_treatment", integer=True, minimum=2)
        n_c = self.number(section, path, "n_control", integer=True, minimum=2)
        if None in (sigma, n_t, n_c):
            return None
        return EndpointModel(sigma=sigma, n_treatment=n_t, n_control=n_c)

    def framework(self, obj: Any, path: str) -> Optional[Framework]:
        section = self.object(obj, path)
        if section is None:
            return None
        if "kind" not in section:
            self.error(_join(path, "kind"), "missing_discriminant",
                       "framework needs a 'kind' discriminant: significance, confidence, "
                       "combined or dual_criterion")
            return None
        kind = self.string(section, path, "kind",
                           choices={"significance", "confidence", "combined", "dual_criterion"})
        if kind is None:
            return None
        if kind == "significance":
            self.unknown(section, path, {"kind", "alpha"})
            alpha = self.number(section, path, "alpha",
                                exclusive_minimum=0.0, exclusive_maximum=1.0)
            return None if alpha is None else SignificanceFramework(alpha=alpha)
        if kind == "confidence":
            self.unknown(section, path, {"kind", "mv", "go_confidence", "stop_confidence"})
            mv = self.number(section, path, "mv")
            go = self.number(section, path, "go_confidence",
                             exclusive_minimum=0.5, exclusive_maximum=1.0)
            stop = self.number(section, path, "stop_confidence",
                               exclusive_minimum=0.5, exclusive_maximum=1.0)
            if None in (mv, go, stop):
                return None
            return ConfidenceFramework(mv=mv, go_confidence=go, stop_confidence=stop)
        if kind == "combined":
            self.unknown(section, path, {"kind", "mv", "confidence", "alpha"})
            mv = self.number(section, path, "mv")
            conf = self.number(section, path, "confidence",
                               exclusive_minimum=0.5, exclusive_maximum=1.0)
            alpha = self.number(section, path, "alpha",
                                exclusive_minimum=0.0, exclusive_maximum=1.0)
            if None in (mv, conf, alpha):
                return None
            return CombinedFramework(mv=mv, confidence=conf, alpha=alpha)
        self.unknown(section, path, {"kind", "mv", "tv", "go_confidence", "stop_confidence",
                                     "both_met_policy"})
        mv = self.number(section, path, "mv")
        tv = self.number(section, path, "tv")
        go = self.number(section, path, "go_confidence",
                         exclusive_minimum=0.5, exclusive_maximum=1.0)
        stop = self.number(section, path, "stop_confidence",
                           exclusive_minimum=0.5, exclusive_maximum=1.0)
        policy_name = self.string(section, path, "both_met_policy", required=False,
                                  default="STOP",
                                  choices={d.value for d in Decision})
        if None in (mv, tv, go, stop, policy_name):
            return None
        if tv <= mv:
            self.error(_join(path, "tv"), "invariant_violation",
                       f"tv must exceed mv, got tv={tv}, mv={mv}")
            return None
        return DualCriterionFramework(mv=mv, tv=tv, go_confidence=go, stop_confidence=stop,
                                      both_met_policy=Decision(policy_name))

    def observed(self, obj: Any, path: str) -> Optional[float]:
        section = self.object(obj, path)
        if section is None:
            return None
        self.unknown(section, path, {"effect"})
        return self.number(section, path, "effect")

    def analysis_prior(self, obj: Any, path: str) -> Optional[NormalBelief]:
        section = self.object(obj, path)
        if section is None:
            return None
        self.unknown(section, path, {"mean", "sd"})
        mean = self.number(section, path, "mean")
        sd = self.number(section, path, "sd", exclusive_minimum=0.0)
        if None in (mean, sd):
            return None
        return NormalBelief(mean=mean, sd=sd)

    def design_prior(self, obj: Any, path: str) -> Optional[DesignPrior]:
        section = self.object(obj, path)
        if section is None:
            return None
        self.unknown(section, path, {"mean", "spread", "spread_interpretation", "truncation"})
        mean = self.number(section, path, "mean")
        spread = self.number(section, path, "spread", minimum=0.0)
        # No silent default: "N(m, s)" is ambiguous between SD and variance.
        interp = self.string(section, path, "spread_interpretation",
                             choices={"sd", "variance"})
        truncation = None
        if "truncation" in section:
            truncation = self.interval(section["truncation"], _join(path, "truncation"))
        if None in (mean, spread, interp):
            return None
        return DesignPrior(mean=mean, spread=spread,
                           spread_interpretation=SpreadKind(interp), truncation=truncation)

    def interval(self, value: Any, path: str) -> Optional[tuple[float, float]]:
        if not isinstance(value, list) or len(value) != 2:
            self.error(path, "wrong_type", "expected a two-element array [lo, hi]")
            return None
        lo, hi = value
        for name, v in (("lo", lo), ("hi", hi)):
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                self.error(path, "wrong_type", f"interval {name} must be a finite number")
                return None
        if not lo < hi:
            self.error(path, "invariant_violation",
                       f"interval must satisfy lo < hi, got [{lo}, {hi}]")
            return None
        return (float(lo), float(hi))

    def program(self, obj: Any, path: str, ph2: Optional[EndpointModel]) -> Optional[ProgramSpec]:
        section = self.object(obj, path)
        if section is None:
            return None
        self.unknown(section, path, {"ph3", "ph3_rule", "go_cut", "stop_cut"})
        if "ph3" not in section:
            self.error(_join(path, "ph3"), "missing_field", "required field is missing")
            ph3 = None
        else:
            ph3 = self.endpoint(section["ph3"], _join(path, "ph3"))
        rule = None
        if "ph3_rule" not in section:
            self.error(_join(path, "ph3_rule"), "missing_field", "required field is missing")
        else:
            rule_path = _join(path, "ph3_rule")
            rule_obj = self.object(section["ph3_rule"], rule_path)
            if rule_obj is not None:
                self.unknown(rule_obj, rule_path, {"alpha", "mv", "relevance_confidence"})
                alpha = self.number(rule_obj, rule_path, "alpha",
                                    exclusive_minimum=0.0, exclusive_maximum=1.0)
                mv = self.number(rule_obj, rule_path, "mv")
                rel = self.number(rule_obj, rule_path, "relevance_confidence",
                                  minimum=0.5, exclusive_maximum=1.0)
                if None not in (alpha, mv, rel):
                    rule = Phase3GoRule(alpha=alpha, mv=mv, relevance_confidence=rel)
        go_cut = self.number(section, path, "go_cut", required=False, default=0.70,
                             exclusive_minimum=0.0, exclusive_maximum=1.0)
        stop_cut = self.number(section, path, "stop_cut", required=False, default=0.30,
                               exclusive_minimum=0.0, exclusive_maximum=1.0)
        if None in (ph3, rule, go_cut, stop_cut) or ph2 is None:
            return None
        if stop_cut >= go_cut:
            self.error(_join(path, "stop_cut"), "invariant_violation",
                       f"stop_cut must be below go_cut, got {stop_cut} >= {go_cut}")
            return None
        return ProgramSpec(ph2_model=ph2, ph3_model=ph3, ph3_rule=rule,
                           go_cut=go_cut, stop_cut=stop_cut)

    def grid_spec(self, obj: Any, path: str, *, integer: bool = False) -> Optional[GridSpec]:
        section = self.object(obj, path)
        if section is None:
            return None
        self.unknown(section, path, {"start", "stop", "step", "values"})
        has_range = any(k in section for k in ("start", "stop", "step"))
        has_values = "values" in section
        if has_range and has_values:
            self.error(path, "invalid_value",
                       "specify either start/stop/step or values, not both")
            return None
        if has_values:
            values = section["values"]
            if not isinstance(values, list) or not values:
                self.error(_join(path, "values"), "wrong_type", "expected a non-empty array of numbers")
                return None
            out = []
            for i, v in enumerate(values):
                if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                    self.error(f"{path}.values[{i}]", "wrong_type", "expected a finite number")
                    return None
                if integer and int(v) != v:
                    self.error(f"{path}.values[{i}]", "wrong_type", f"expected an integer, got {v}")
                    return None
                out.append(float(v))
            if any(b <= a for a, b in zip(out, out[1:])):
                self.error(_join(path, "values"), "invariant_violation",
                           "grid values must be strictly increasing")
                return None
            return GridSpec(values=tuple(out))
        if not has_range:
            self.error(path, "missing_field", "grid needs start/stop/step or values")
            return None
        start = self.number(section, path, "start", integer=integer)
        stop = self.number(section, path, "stop", integer=integer)
        step = self.number(section, path, "step", integer=integer, exclusive_minimum=0.0)
        if None in (start, stop, step):
            return None
        if stop < start:
            self.error(path, "invariant_violation", f"stop must be >= start, got [{start}, {stop}]")
            return None
        return GridSpec(start=float(start), stop=float(stop), step=float(step))

    def grids(self, obj: Any, path: str) -> Optional[Grids]:
        section = self.object(obj, path)
        if section is None:
            return None
        self.unknown(section, path,
                     {"effect_grid", "n_grid", "observed_grid", "ph3_n_list", "true_effect"})
        effect = n = observed = None
        ph3_list = None
        if "effect_grid" in section:
            effect = self.grid_spec(section["effect_grid"], _join(path, "effect_grid"))
        if "n_grid" in section:
            n = self.grid_spec(section["n_grid"], _join(path, "n_grid"), integer=True)
        if "observed_grid" in section:
            observed = self.grid_spec(section["observed_grid"], _join(path, "observed_grid"))
        if "ph3_n_list" in section:
            raw = section["ph3_n_list"]
            list_path = _join(path, "ph3_n_list")
            if not isinstance(raw, list) or not raw:
                self.error(list_path, "wrong_type", "expected a non-empty array of integers")
            else:
                ok = True
                for i, v in enumerate(raw):
                    if isinstance(v, bool) or not isinstance(v, (int, float)) or int(v) != v or v < 2:
                        self.error(f"{list_path}[{i}]", "invalid_value",
                                   f"expected an integer >= 2, got {v}")
                        ok = False
                if ok:
                    ints = [int(v) for v in raw]
                    if any(b <= a for a, b in zip(ints, ints[1:])):
                        self.error(list_path, "invariant_violation",
                                   "ph3_n_list must be strictly increasing")
                    else:
                        ph3_list = tuple(ints)
        true_effect = self.number(section, path, "true_effect", required=False)
        return Grids(effect_grid=effect, n_grid=n, observed_grid=observed,
                     ph3_n_list=ph3_list, true_effect=true_effect)

    def sample_size(self, obj: Any, path: str) -> Optional[SampleSizeRequest]:
        section = self.object(obj, path)
        if section is None:
            return None
        self.unknown(section, path, {"true_effect", "target_p_go", "n_min", "n_max"})
        true_effect = self.number(section, path, "true_effect")
        target = self.number(section, path, "target_p_go",
                             exclusive_minimum=0.0, exclusive_maximum=1.0)
        n_min = self.number(section, path, "n_min", required=False, default=2,
                            integer=True, minimum=2)
        n_max = self.number(section, path, "n_max", required=False, default=1000,
                            integer=True, minimum=2)
        if None in (true_effect, target, n_min, n_max):
            return None
        if n_max < n_min:
            self.error(_join(path, "n_max"), "invariant_violation",
                       f"n_max must be >= n_min, got {n_max} < {n_min}")
            return None
        return SampleSizeRequest(true_effect=true_effect, target_p_go=target,
                                 n_min=n_min, n_max=n_max)

    def mc(self, obj: Any, path: str) -> Optional[McSettings]:
        section = self.object(obj, path)
        if section is None:
            return None
        self.unknown(section, path, {"n_sims", "seed", "n_chunks"})
        n_sims = self.number(section, path, "n_sims", integer=True, minimum=1)
        # The seed is required: reproducibility is part of the scenario, not
        # an ambient default.
        seed = self.number(section, path, "seed", integer=True, minimum=0)
        n_chunks = self.number(section, path, "n_chunks", required=False, default=1,
                               integer=True, minimum=1)
        if None in (n_sims, seed, n_chunks):
            return None
        return McSettings(n_sims=n_sims, seed=seed, n_chunks=n_chunks)


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


_ROOT_FIELDS = {"schema_version", "endpoint", "framework", "observed", "analysis_prior",
                "design_prior", "program", "grids", "sample_size", "mc"}


def _validate(raw: Any) -> Scenario:
    v = _Validator()
    root = v.object(raw, "")
    if root is None:
        raise ScenarioError(v.diagnostics)

    version = v.string(root, "", "schema_version")
    if version is not None and version != SCHEMA_VERSION:
        v.error("schema_version", "version_mismatch",
                f"unsupported schema_version {version!r}; this build reads {SCHEMA_VERSION!r}")
    v.unknown(root, "", _ROOT_FIELDS)

    endpoint = framework = None
    if "endpoint" not in root:
        v.error("endpoint", "missing_field", "required section is missing")
    else:
        endpoint = v.endpoint(root["endpoint"], "endpoint")
    if "framework" not in root:
        v.error("framework", "missing_field", "required section is missing")
    else:
        framework = v.framework(root["framework"], "framework")

    observed = v.observed(root["observed"], "observed") if "observed" in root else None
    analysis_prior = (v.analysis_prior(root["analysis_prior"], "analysis_prior")
                      if "analysis_prior" in root else None)
    design_prior = (v.design_prior(root["design_prior"], "design_prior")
                    if "design_prior" in root else None)
    program = v.program(root["program"], "program", endpoint) if "program" in root else None
    grids = v.grids(root["grids"], "grids") if "grids" in root else None
    sample_size = (v.sample_size(root["sample_size"], "sample_size")
                   if "sample_size" in root else None)
    mc = v.mc(root["mc"], "mc") if "mc" in root else None

    if v.diagnostics or endpoint is None or framework is None:
        raise ScenarioError(v.diagnostics)
    return Scenario(endpoint=endpoint, framework=framework, observed_effect=observed,
                    analysis_prior=analysis_prior, design_prior=design_prior,
                    program=program, grids=grids, sample_size=sample_size, mc=mc,
                    sha256=_canonical_hash(raw))


def load_scenario(source: Union[str, os.PathLike, bytes, bytearray, dict]) -> Scenario:
    """Load and validate a scenario from a path, raw JSON bytes, or a parsed dict."""
    if isinstance(source, dict):
        raw = source
    else:
        if isinstance(source, (str, os.PathLike)):
            data = Path(source).read_bytes()
        else:
            data = bytes(source)
        try:
            raw = json.loads(data.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ScenarioError([Diagnostic("", "parse_error", f"not valid JSON: {exc}")]) from exc
    return _validate(raw)


def _endpoint_dict(model: EndpointModel) -> dict:
    return {"sigma": model.sigma, "n_treatment": model.n_treatment,
            "n_control": model.n_control}


def _framework_dict(fw: Framework) -> dict:
    if isinstance(fw, SignificanceFramework):
        return {"kind": "significance", "alpha": fw.alpha}
    if isinstance(fw, ConfidenceFramework):
        return {"kind": "confidence", "mv": fw.mv, "go_confidence": fw.go_confidence,
                "stop_confidence": fw.stop_confidence}
    if isinstance(fw, CombinedFramework):
        return {"kind": "combined", "mv": fw.mv, "confidence": fw.confidence,
                "alpha": fw.alpha}
    return {"kind": "dual_criterion", "mv": fw.mv, "tv": fw.tv,
            "go_confidence": fw.go_confidence, "stop_confidence": fw.stop_confidence,
            "both_met_policy": fw.both_met_policy.value}


def _grid_spec_dict(spec: GridSpec) -> dict:
    if spec.values is not None:
        return {"values": list(spec.values)}
    return {"start": spec.start, "stop": spec.stop, "step": spec.step}


def scenario_to_dict(scenario: Scenario) -> dict:
    """Re-emit a scenario as a schema-valid JSON object (round-trips through load)."""
    doc: dict = {
        "schema_version": SCHEMA_VERSION,
        "endpoint": _endpoint_dict(scenario.endpoint),
        "framework": _framework_dict(scenario.framework),
    }
    if scenario.observed_effect is not None:
        doc["observed"] = {"effect": scenario.observed_effect}
    if scenario.analysis_prior is not None:
        doc["analysis_prior"] = {"mean": scenario.analysis_prior.mean,
                                 "sd": scenario.analysis_prior.sd}
    if scenario.design_prior is not None:
        prior = {"mean": scenario.design_prior.mean,
                 "spread": scenario.design_prior.spread,
                 "spread_interpretation": scenario.design_prior.spread_interpretation.value}
        if scenario.design_prior.truncation is not None:
            prior["truncation"] = list(scenario.design_prior.truncation)
        doc["design_prior"] = prior
    if scenario.program is not None:
        doc["program"] = {
            "ph3": _endpoint_dict(scenario.program.ph3_model),
            "ph3_rule": {"alpha": scenario.program.ph3_rule.alpha,
                         "mv": scenario.program.ph3_rule.mv,
                         "relevance_confidence": scenario.program.ph3_rule.relevance_confidence},
            "go_cut": scenario.program.go_cut,
            "stop_cut": scenario.program.stop_cut,
        }
    if scenario.grids is not None:
        grids: dict = {}
        if scenario.grids.effect_grid is not None:
            grids["effect_grid"] = _grid_spec_dict(scenario.grids.effect_grid)
        if scenario.grids.n_grid is not None:
            grids["n_grid"] = _grid_spec_dict(scenario.grids.n_grid)
        if scenario.grids.observed_grid is not None:
            grids["observed_grid"] = _grid_spec_dict(scenario.grids.observed_grid)
        if scenario.grids.ph3_n_list is not None:
            grids["ph3_n_list"] = list(scenario.grids.ph3_n_list)
        if scenario.grids.true_effect is not None:
            grids["true_effect"] = scenario.grids.true_effect
        if grids:
            doc["grids"] = grids
    if scenario.sample_size is not None:
        doc["sample_size"] = {"true_effect": scenario.sample_size.true_effect,
                              "target_p_go": scenario.sample_size.target_p_go,
                              "n_min": scenario.sample_size.n_min,
                              "n_max": scenario.sample_size.n_max}
    if scenario.mc is not None:
        doc["mc"] = {"n_sims": scenario.mc.n_sims, "seed": scenario.mc.seed,
                     "n_chunks": scenario.mc.n_chunks}
    return doc
