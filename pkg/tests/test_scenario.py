"""Strict scenario parsing: located diagnostics and round-trips."""

import json
from pathlib import Path

import pytest

from qdm.frameworks import Decision, DualCriterionFramework
from qdm.oc import SpreadKind
from qdm.scenario import (
    SCHEMA_VERSION,
    GridSpec,
    Scenario,
    ScenarioError,
    load_scenario,
    scenario_to_dict,
)

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def example_a_dict():
    return json.loads((SCENARIOS / "example_a.json").read_text())


def diagnostics_of(raw) -> list:
    with pytest.raises(ScenarioError) as err:
        load_scenario(raw)
    return err.value.diagnostics


def kinds_and_paths(diags):
    return {(d.kind, d.path) for d in diags}


class TestLoadExampleScenarios:
    def test_example_a_fields(self):
        scenario = load_scenario(SCENARIOS / "example_a.json")
        assert scenario.endpoint.sigma == 6.0
        assert scenario.endpoint.n_treatment == 80
        assert scenario.endpoint.n_control == 80
        fw = scenario.framework
        assert isinstance(fw, DualCriterionFramework)
        assert (fw.mv, fw.tv) == (2.0, 3.0)
        assert (fw.go_confidence, fw.stop_confidence) == (0.70, 0.90)
        assert fw.both_met_policy is Decision.STOP
        assert scenario.design_prior.spread_interpretation is SpreadKind.SD
        assert scenario.mc.seed == 20201108
        assert len(scenario.sha256) == 64

    def test_example_b_has_program(self):
        scenario = load_scenario(SCENARIOS / "example_b.json")
        assert scenario.program is not None
        assert scenario.program.ph3_model.n_treatment == 200
        assert scenario.program.go_cut == 0.70
        assert scenario.ph3_n_list() == (100, 200, 300)

    def test_default_grids(self):
        scenario = load_scenario(SCENARIOS / "example_a.json")
        grid = scenario.effect_grid()
        assert len(grid) == 81
        assert grid[0] == 0.0 and grid[-1] == 4.0
        assert grid[3] == 0.15
        ns = scenario.n_grid()
        assert ns[0] == 50 and ns[-1] == 150 and len(ns) == 101
        assert scenario.oc_vs_n_effect() == 3.0  # defaults to tv


class TestDiagnostics:
    def test_tv_equal_mv_rejected(self):
        raw = example_a_dict()
        raw["framework"]["tv"] = 2.0
        diags = diagnostics_of(raw)
        assert ("invariant_violation", "framework.tv") in kinds_and_paths(diags)

    def test_spread_without_interpretation_rejected(self):
        raw = example_a_dict()
        del raw["design_prior"]["spread_interpretation"]
        diags = diagnostics_of(raw)
        assert ("missing_field", "design_prior.spread_interpretation") in kinds_and_paths(diags)

    def test_unknown_field_rejected(self):
        raw = example_a_dict()
        raw["framework"]["epsilon"] = 1.0
        raw["colour"] = "blue"
        paths = kinds_and_paths(diagnostics_of(raw))
        assert ("unknown_field", "framework.epsilon") in paths
        assert ("unknown_field", "colour") in paths

    def test_missing_discriminant(self):
        raw = example_a_dict()
        del raw["framework"]["kind"]
        diags = diagnostics_of(raw)
        assert ("missing_discriminant", "framework.kind") in kinds_and_paths(diags)

    def test_version_mismatch(self):
        raw = example_a_dict()
        raw["schema_version"] = "2"
        diags = diagnostics_of(raw)
        assert any(d.kind == "version_mismatch" for d in diags)

    def test_wrong_type(self):
        raw = example_a_dict()
        raw["endpoint"]["sigma"] = "six"
        diags = diagnostics_of(raw)
        assert ("wrong_type", "endpoint.sigma") in kinds_and_paths(diags)

    def test_missing_seed(self):
        raw = example_a_dict()
        del raw["mc"]["seed"]
        diags = diagnostics_of(raw)
        assert ("missing_field", "mc.seed") in kinds_and_paths(diags)

    def test_collects_multiple_diagnostics(self):
        raw = example_a_dict()
        raw["framework"]["tv"] = 0.0
        raw["endpoint"]["n_treatment"] = 1
        raw["junk"] = {}
        diags = diagnostics_of(raw)
        assert len(diags) >= 3

    def test_parse_error_on_garbage_bytes(self):
        diags = diagnostics_of(b"{not json")
        assert diags[0].kind == "parse_error"

    def test_non_object_root(self):
        diags = diagnostics_of(b"[1, 2]")
        assert diags[0].kind == "wrong_type"

    def test_invalid_confidence_bounds(self):
        raw = example_a_dict()
        raw["framework"]["go_confidence"] = 0.5
        diags = diagnostics_of(raw)
        assert ("invalid_value", "framework.go_confidence") in kinds_and_paths(diags)

    def test_bad_truncation(self):
        raw = example_a_dict()
        raw["design_prior"]["truncation"] = [4.0, 0.0]
        diags = diagnostics_of(raw)
        assert ("invariant_violation", "design_prior.truncation") in kinds_and_paths(diags)

    def test_bad_program_cuts(self):
        raw = json.loads((SCENARIOS / "example_b.json").read_text())
        raw["program"]["stop_cut"] = 0.8
        diags = diagnostics_of(raw)
        assert ("invariant_violation", "program.stop_cut") in kinds_and_paths(diags)

    def test_grid_with_both_forms(self):
        raw = example_a_dict()
        raw["grids"] = {"effect_grid": {"start": 0, "stop": 4, "step": 0.5, "values": [1, 2]}}
        diags = diagnostics_of(raw)
        assert ("invalid_value", "grids.effect_grid") in kinds_and_paths(diags)

    def test_grid_bad_step(self):
        raw = example_a_dict()
        raw["grids"] = {"n_grid": {"start": 50, "stop": 150, "step": 0}}
        diags = diagnostics_of(raw)
        assert ("invalid_value", "grids.n_grid.step") in kinds_and_paths(diags)

    def test_non_integer_n_grid(self):
        raw = example_a_dict()
        raw["grids"] = {"n_grid": {"values": [50, 75.5]}}
        assert diagnostics_of(raw)

    def test_bad_ph3_n_list(self):
        raw = example_a_dict()
        raw["grids"] = {"ph3_n_list": [300, 100]}
        diags = diagnostics_of(raw)
        assert any(d.kind == "invariant_violation" for d in diags)


class TestRoundTrip:
    @pytest.mark.parametrize("name", ["example_a.json", "example_b.json"])
    def test_shipped_scenarios(self, name):
        first = load_scenario(SCENARIOS / name)
        second = load_scenario(scenario_to_dict(first))
        assert first == second

    def test_maximal_scenario(self):
        raw = {
            "schema_version": SCHEMA_VERSION,
            "endpoint": {"sigma": 4.5, "n_treatment": 60, "n_control": 90},
            "framework": {"kind": "combined", "mv": 1.0, "confidence": 0.8, "alpha": 0.05},
            "observed": {"effect": 1.4},
            "analysis_prior": {"mean": 0.0, "sd": 3.0},
            "design_prior": {"mean": 1.5, "spread": 1.21, "spread_interpretation": "variance",
                             "truncation": [0.0, 3.0]},
            "program": {"ph3": {"sigma": 4.5, "n_treatment": 150, "n_control": 150},
                        "ph3_rule": {"alpha": 0.025, "mv": 1.0, "relevance_confidence": 0.75},
                        "go_cut": 0.65, "stop_cut": 0.25},
            "grids": {"effect_grid": {"start": 0, "stop": 3, "step": 0.1},
                      "n_grid": {"values": [50, 100, 150]},
                      "observed_grid": {"start": 0, "stop": 3, "step": 0.25},
                      "ph3_n_list": [100, 150], "true_effect": 1.5},
            "sample_size": {"true_effect": 1.5, "target_p_go": 0.8, "n_min": 10, "n_max": 500},
            "mc": {"n_sims": 1000, "seed": 7, "n_chunks": 2},
        }
        scenario = load_scenario(raw)
        assert load_scenario(scenario_to_dict(scenario)) == scenario
        assert scenario.grids.n_grid.materialize(integer=True) == (50, 100, 150)

    def test_seed_override(self):
        scenario = load_scenario(SCENARIOS / "example_a.json")
        other = scenario.with_seed(1)
        assert other.mc.seed == 1
        assert other.sha256 == scenario.sha256  # provenance still names the input

    def test_hash_is_content_addressed(self):
        raw = example_a_dict()
        a = load_scenario(raw)
        b = load_scenario(json.dumps(raw, indent=4).encode())
        assert a.sha256 == b.sha256

    def test_hash_ignores_integral_float_spelling(self):
        # Writers in other languages serialise 6.0 as 6; same content, same hash.
        text = (SCENARIOS / "example_a.json").read_text()
        assert '"sigma": 6.0' in text
        respelled = text.replace('"sigma": 6.0', '"sigma": 6')
        assert load_scenario(respelled.encode()).sha256 == \
            load_scenario(text.encode()).sha256

    def test_significance_and_confidence_kinds(self):
        base = {"schema_version": "1",
                "endpoint": {"sigma": 2.0, "n_treatment": 30, "n_control": 30}}
        sig = load_scenario({**base, "framework": {"kind": "significance", "alpha": 0.1}})
        conf = load_scenario({**base, "framework": {"kind": "confidence", "mv": 0.5,
                                                    "go_confidence": 0.7,
                                                    "stop_confidence": 0.8}})
        assert load_scenario(scenario_to_dict(sig)) == sig
        assert load_scenario(scenario_to_dict(conf)) == conf


class TestGridSpec:
    def test_range_materialization_is_clean(self):
        assert GridSpec(start=0.0, stop=4.0, step=0.05).materialize()[3] == 0.15
        assert GridSpec(start=50, stop=150, step=1).materialize(integer=True)[0] == 50

    def test_inclusive_endpoint(self):
        grid = GridSpec(start=0.0, stop=1.0, step=0.25).materialize()
        assert grid == (0.0, 0.25, 0.5, 0.75, 1.0)
