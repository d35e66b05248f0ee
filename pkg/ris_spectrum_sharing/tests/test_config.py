#!/usr/bin/env python3
"""
RIS Spectrum Sharing Workbench - Multi-VSP Spectrum Sharing with Reconfigurable Intelligent Surfaces
Copyright (c) 2025 RIS Spectrum Sharing Project

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""

"""
Tests for run configuration files, presets and overrides
"""

import json

import pytest

from ris_spectrum_sharing.config import (RunConfig, apply_overrides, list_presets, load_config_file,
                                         load_run_config, parse_override)
from ris_spectrum_sharing.exceptions import InvalidConfig


PRESETS = ["default", "hyperparam", "multi_bs_no_ris", "multi_bs_ris", "ris_m16", "ris_m4",
           "spectrum_dedicated", "spectrum_reuse"]


def write_json(path, data):
    path.write_text(json.dumps(data))
    return path


def test_bundled_presets():
    assert list_presets() == PRESETS


@pytest.mark.parametrize("name", PRESETS)
def test_every_preset_builds(name):
    run = load_run_config(f"preset:{name}")
    scenario = run.build_scenario()
    assert run.source == f"preset:{name}"
    assert run.seeds == [1, 2, 3]
    assert scenario.num_vsps == 2


def test_preset_contents():
    assert load_run_config("preset:ris_m16").build_scenario().elements_per_ris == 16
    reuse = load_run_config("preset:spectrum_reuse").build_scenario()
    assert reuse.reusable_set == (0, 1) and reuse.dedicated_set == ()
    assert load_run_config("preset:multi_bs_no_ris").build_scenario().num_ris == 0


def test_unknown_preset():
    with pytest.raises(InvalidConfig) as excinfo:
        load_run_config("preset:nope")
    assert excinfo.value.field == "preset"


class TestOverrides:
    def test_parse(self):
        assert parse_override("ris.elements=16") == (["ris", "elements"], 16)
        assert parse_override("agent=ddpg") == (["agent"], "ddpg")
        assert parse_override("seeds=[4, 5]") == (["seeds"], [4, 5])
        assert parse_override("hyperparameters.lr=5e-4") == (["hyperparameters", "lr"], 5e-4)

    def test_parse_errors(self):
        with pytest.raises(InvalidConfig):
            parse_override("total_steps")
        with pytest.raises(InvalidConfig):
            parse_override("ris..elements=3")

    def test_routing(self):
        """Test that run fields go to the run and everything else to the scenario"""
        data = apply_overrides({"scenario": {"vsps": 2}}, ["total_steps=5", "ris.elements=16",
                                                           "hyperparameters.batch_size=32"])
        assert data["total_steps"] == 5
        assert data["scenario"] == {"vsps": 2, "ris": {"elements": 16}}
        assert data["hyperparameters"] == {"batch_size": 32}

    def test_scenario_override_on_preset_reference(self):
        data = apply_overrides({"scenario_preset": "ris_m4"}, ["users_per_vsp=5"])
        assert data["scenario"] == {"ris": {"elements": 4}, "users_per_vsp": 5}

    def test_learning_rate_override(self):
        run = load_run_config("preset:default", ["hyperparameters.lr=5e-4"])
        assert run.hyperparameters.actor_lr == run.hyperparameters.critic_lr == 5e-4


class TestFiles:
    def test_run_file_with_flags(self, tmp_path):
        path = write_json(tmp_path / "run.json", {"scenario": {"users_per_vsp": 2}, "agent": "ddpg",
                                                  "total_steps": 100})
        run = load_run_config(path, seeds=[7], output_dir=str(tmp_path / "out"), jobs=3)
        assert run.source == str(path)
        assert run.agent == "ddpg"
        assert run.seeds == [7]
        assert run.jobs == 3
        assert run.output_dir == str(tmp_path / "out")
        assert run.build_scenario().users_per_vsp == 2

    def test_plain_scenario_file(self, tmp_path):
        path = write_json(tmp_path / "scenario.json", {"users_per_vsp": 2, "subchannels": 2})
        run = load_run_config(path)
        assert run.build_scenario().num_subchannels == 2
        assert run.total_steps == 20_000

    def test_scenario_file_relative_to_run_file(self, tmp_path):
        (tmp_path / "nets").mkdir()
        write_json(tmp_path / "nets" / "deployment.json", {"scenario": {"ris": {"count": 0}}})
        path = write_json(tmp_path / "run.json", {"scenario_file": "nets/deployment.json", "total_steps": 10})
        assert load_run_config(path).build_scenario().num_ris == 0

    def test_conflicting_scenario_sources(self, tmp_path):
        path = write_json(tmp_path / "run.json", {"scenario": {}, "scenario_preset": "ris_m4"})
        with pytest.raises(InvalidConfig) as excinfo:
            load_run_config(path)
        assert excinfo.value.field == "scenario"

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError) as excinfo:
            load_config_file(tmp_path / "absent.json")
        assert excinfo.value.filename == str(tmp_path / "absent.json")

    def test_malformed_json_names_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{\"total_steps\": ")
        with pytest.raises(InvalidConfig) as excinfo:
            load_run_config(path)
        assert excinfo.value.source == str(path)

    @pytest.mark.parametrize("data, field", [
        ({"total_steps": 0}, "total_steps"),
        ({"agent": "ppo"}, "agent"),
        ({"jobs": 0}, "jobs"),
        ({"seeds": []}, "seeds"),
        ({"learning_rate": 0.1}, "learning_rate"),
        ({"benchmark": {"max_iter": 3}}, "benchmark.max_iter"),
        ({"hyperparameters": {"tau": 0.0}}, "hyperparameters.tau"),
        ({"scenario": {"l_c": 0}}, "l_c"),
    ])
    def test_invalid_fields_report_source(self, tmp_path, data, field):
        path = write_json(tmp_path / "run.json", data)
        with pytest.raises(InvalidConfig) as excinfo:
            load_run_config(path).build_scenario()
        assert excinfo.value.field == field
        assert excinfo.value.source == str(path)


def test_to_dict_round_trip():
    run = load_run_config("preset:ris_m4", ["hyperparameters.batch_size=64", "checkpoint_every=100"])
    again = RunConfig.from_config(run.to_dict())
    assert again.to_dict() == run.to_dict()
    assert again.build_scenario().elements_per_ris == 4


def test_with_updates_leaves_original():
    run = load_run_config()
    changed = run.with_updates(total_steps=5)
    assert changed.total_steps == 5
    assert run.total_steps == 20_000
    with pytest.raises(InvalidConfig):
        run.with_updates(total_steps=-1)
