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
Tests for the rss command line: exit codes and outputs
"""

import json

import pytest

from ris_spectrum_sharing.cli import (EXIT_CONFIG_ERROR, EXIT_OK, EXIT_RUNTIME_ERROR, build_parser, main,
                                      parse_seeds, parse_values)
from ris_spectrum_sharing.exceptions import InvalidConfig


@pytest.fixture
def run_file(tmp_path, small_config, tiny_hyperparameters):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"scenario": small_config, "total_steps": 12, "episode_length": 6,
                                "seeds": [1], "hyperparameters": tiny_hyperparameters}))
    return path


def test_parse_helpers():
    assert parse_seeds("1, 2,3") == [1, 2, 3]
    assert parse_seeds(None) is None
    assert parse_values("batch", "16,64") == [16, 64]
    assert parse_values("lr", "1e-4,5e-4") == [1e-4, 5e-4]
    with pytest.raises(InvalidConfig):
        parse_seeds("1,x")
    with pytest.raises(InvalidConfig):
        parse_values("batch", "1.5")
    with pytest.raises(InvalidConfig):
        parse_seeds(",")


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert "0.1.0" in capsys.readouterr().out


def test_validate_config_ok(capsys):
    assert main(["--no-rich", "validate-config", "--override", "users_per_vsp=2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Configuration OK" in out
    assert "preset:default" in out


def test_invalid_field_names_file_and_field(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"total_steps": -5}))
    assert main(["--no-rich", "validate-config", "--config", str(path)]) == EXIT_CONFIG_ERROR
    err = capsys.readouterr().err
    assert f"config error: {path}: total_steps:" in err


def test_unknown_preset_and_missing_file(tmp_path, capsys):
    assert main(["--no-rich", "validate-config", "--config", "preset:absent"]) == EXIT_CONFIG_ERROR
    assert main(["--no-rich", "train", "--config", str(tmp_path / "absent.json")]) == EXIT_CONFIG_ERROR
    assert str(tmp_path / "absent.json") in capsys.readouterr().err


def test_bad_seeds_is_config_error(run_file):
    assert main(["--no-rich", "train", "--config", str(run_file), "--seeds", "one"]) == EXIT_CONFIG_ERROR


def test_train_writes_metrics(run_file, tmp_path, capsys):
    out = tmp_path / "runs"
    code = main(["--no-rich", "train", "--config", str(run_file), "--out", str(out), "--agent", "ddpg"])
    assert code == EXIT_OK
    assert (out / "ddpg_seed1.csv").exists()
    assert (out / "ddpg_aggregate.csv").exists()
    assert "ddpg aggregate" in capsys.readouterr().out


def test_plot_empty_input_is_runtime_error(tmp_path, capsys):
    csv = tmp_path / "empty.csv"
    csv.write_text("step,reward_raw,reward_smoothed\n")
    figure = tmp_path / "fig.svg"
    assert main(["--no-rich", "plot", str(csv), "--output", str(figure)]) == EXIT_RUNTIME_ERROR
    assert not figure.exists()
    assert "EmptyInput" in capsys.readouterr().err


def test_benchmark_guard_is_runtime_error(tmp_path):
    code = main(["--no-rich", "benchmark", "--override", "users_per_vsp=6", "--out", str(tmp_path)])
    assert code == EXIT_RUNTIME_ERROR
    assert not (tmp_path / "benchmark.json").exists()


def test_experiment_catalog(capsys):
    assert main(["--no-rich", "experiment", "list"]) == EXIT_OK
    out = capsys.readouterr().out
    for name in ("ris-elements", "spectrum", "users", "learning-rate", "batch-size", "geometry"):
        assert name in out


def test_geometry_experiment(tmp_path):
    assert main(["--no-rich", "experiment", "geometry", "--out", str(tmp_path), "--format", "png"]) == EXIT_OK
    assert list(tmp_path.rglob("*.png"))
