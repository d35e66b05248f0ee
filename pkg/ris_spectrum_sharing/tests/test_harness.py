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
Tests for metrics files, the process pool and the train/benchmark/plot/sweep commands
"""

import json

import numpy as np
import pandas as pd
import pytest

from ris_spectrum_sharing.config import RunConfig
from ris_spectrum_sharing.exceptions import EmptyInput, InvalidConfig, SchemaMismatch, SearchSpaceTooLarge
from ris_spectrum_sharing.harness.metrics import (aggregate_runs, benchmark_mean, read_metrics, trailing_mean,
                                                  truncate_metrics, write_metrics_csv)
from ris_spectrum_sharing.harness.parallel import ParallelRunner
from ris_spectrum_sharing.harness.plotting import ResultPlotter, load_curve
from ris_spectrum_sharing.harness.runner import (BENCHMARK_FILE, RUN_CONFIG_FILE, aggregate_file, cmd_benchmark,
                                                 cmd_plot, cmd_sweep, cmd_train, cmd_validate_config, run_file)
from ris_spectrum_sharing.learning.trainer import MetricsRecord


def write_csv(path, rows, columns=("step", "reward_raw", "reward_smoothed")):
    pd.DataFrame(rows, columns=list(columns)).to_csv(path, index=False)
    return path


def record(step, reward):
    return MetricsRecord(step=step, episode=1, reward_raw=reward, reward_smoothed=reward, sum_utility=reward,
                         utility=[reward, 0.0], qos_penalty=0.0, sum_rate=1.0)


@pytest.fixture
def tiny_run(small_config, tiny_hyperparameters):
    return RunConfig.from_config({"scenario": small_config, "total_steps": 20, "episode_length": 10,
                                  "seeds": [1, 2], "smoothing_window": 5,
                                  "hyperparameters": tiny_hyperparameters})


class TestMetricsFiles:
    def test_write_and_read(self, tmp_path):
        info = write_metrics_csv(tmp_path / "run.csv", [record(1, 0.5), record(2, 1.0 / 3.0)], num_vsps=2)
        assert info["rows"] == 2
        assert info["final_smoothed"] == 1.0 / 3.0
        frame = read_metrics(tmp_path / "run.csv")
        assert list(frame["step"]) == [1, 2]
        assert frame["reward_raw"].iloc[1] == 1.0 / 3.0
        assert "wall_ms" not in frame.columns
        assert frame["critic_loss"].isna().all()

    def test_wall_clock_column_is_opt_in(self, tmp_path):
        write_metrics_csv(tmp_path / "run.csv", [record(1, 0.5)], num_vsps=2, include_wall_clock=True)
        assert "wall_ms" in read_metrics(tmp_path / "run.csv").columns

    def test_append_and_truncate(self, tmp_path):
        path = tmp_path / "run.csv"
        write_metrics_csv(path, [record(s, float(s)) for s in range(1, 6)], num_vsps=2)
        original = path.read_bytes()
        assert truncate_metrics(path, 3) == 3
        write_metrics_csv(path, [record(s, float(s)) for s in range(4, 6)], num_vsps=2, append=True)
        assert path.read_bytes() == original

    def test_schema_and_empty_errors(self, tmp_path):
        with pytest.raises(SchemaMismatch) as excinfo:
            read_metrics(write_csv(tmp_path / "bad.csv", [[1, 0.5]], columns=("step", "reward")))
        assert "reward_raw" in excinfo.value.missing
        with pytest.raises(EmptyInput):
            read_metrics(write_csv(tmp_path / "empty.csv", []))
        (tmp_path / "blank.csv").write_text("")
        with pytest.raises(EmptyInput):
            read_metrics(tmp_path / "blank.csv")

    def test_trailing_mean(self):
        assert np.allclose(trailing_mean([1, 2, 3, 4, 5], 2), [1.0, 1.5, 2.5, 3.5, 4.5])
        assert np.allclose(trailing_mean([4, 0, 2], 10), [4.0, 2.0, 2.0])

    def test_aggregate_median_and_mean(self, tmp_path):
        """Test step-wise aggregation over the common steps of three runs"""
        paths = [
            write_csv(tmp_path / "a.csv", [[1, 1.0, 1.0], [2, 2.0, 1.5], [3, 3.0, 2.0]]),
            write_csv(tmp_path / "b.csv", [[1, 4.0, 4.0], [2, 6.0, 5.0]]),
            write_csv(tmp_path / "c.csv", [[1, 7.0, 7.0], [2, 1.0, 4.0], [3, 0.0, 3.0]]),
        ]
        out = aggregate_runs(paths, tmp_path / "agg.csv")
        frame = pd.read_csv(out)
        assert list(frame["step"]) == [1, 2]
        assert list(frame["reward_raw_median"]) == [4.0, 2.0]
        assert list(frame["reward_raw_mean"]) == [4.0, 3.0]
        assert list(frame["reward_smoothed_median"]) == [4.0, 4.0]
        assert list(frame["runs"]) == [3, 3]
        assert list(load_curve(out)["value"]) == [4.0, 3.5]
        with pytest.raises(EmptyInput):
            aggregate_runs([], tmp_path / "none.csv")


def test_parallel_runner_preserves_order():
    runner = ParallelRunner(jobs=2)
    assert runner.map(abs, [-3, 1, -2, 5]) == [3, 1, 2, 5]
    assert ParallelRunner(jobs=1).map(abs, []) == []
    assert runner.stats["tasks"] == 4


class TestTrain:
    def test_outputs_and_byte_identical_rerun(self, tiny_run, tmp_path):
        first = cmd_train(tiny_run, output_dir=tmp_path / "a")
        second = cmd_train(tiny_run, output_dir=tmp_path / "b")
        for seed in (1, 2):
            a = run_file(tmp_path / "a", "sac", seed).read_bytes()
            assert a == run_file(tmp_path / "b", "sac", seed).read_bytes()
            assert len(a.decode().splitlines()) == 21
        assert (aggregate_file(tmp_path / "a", "sac").read_bytes()
                == aggregate_file(tmp_path / "b", "sac").read_bytes())
        assert [run["seed"] for run in first["runs"]] == [1, 2]
        assert first["runs"][0]["final_smoothed"] == second["runs"][0]["final_smoothed"]
        saved = json.loads((tmp_path / "a" / RUN_CONFIG_FILE).read_text())
        assert saved["total_steps"] == 20
        assert RunConfig.from_config(saved).seeds == [1, 2]

    def test_parallel_matches_serial(self, tiny_run, tmp_path):
        cmd_train(tiny_run, agents=["ddpg"], output_dir=tmp_path / "serial")
        cmd_train(tiny_run.with_updates(jobs=2), agents=["ddpg"], output_dir=tmp_path / "parallel")
        for seed in (1, 2):
            assert (run_file(tmp_path / "serial", "ddpg", seed).read_bytes()
                    == run_file(tmp_path / "parallel", "ddpg", seed).read_bytes())

    def test_resume_completes_interrupted_run(self, tiny_run, tmp_path):
        """Test that resuming from an episode-boundary checkpoint reproduces the full file"""
        reference = tmp_path / "reference"
        cmd_train(tiny_run.with_updates(seeds=[3]), output_dir=reference)

        interrupted = tmp_path / "interrupted"
        cmd_train(tiny_run.with_updates(seeds=[3], total_steps=10, checkpoint_every=10), output_dir=interrupted)
        result = cmd_train(tiny_run.with_updates(seeds=[3], checkpoint_every=10), output_dir=interrupted,
                           resume=True)
        assert result["runs"][0]["resumed"]
        assert run_file(interrupted, "sac", 3).read_bytes() == run_file(reference, "sac", 3).read_bytes()

    def test_rejects_non_learning_agent(self, tiny_run, tmp_path):
        with pytest.raises(InvalidConfig):
            cmd_train(tiny_run, agents=["none"], output_dir=tmp_path)


class TestBenchmark:
    def test_benchmark_file(self, tiny_run, tmp_path):
        path = cmd_benchmark(tiny_run, output_dir=tmp_path)
        assert path == tmp_path / BENCHMARK_FILE
        data = json.loads(path.read_text())
        assert data["seeds"] == [1, 2]
        assert [r["seed"] for r in data["records"]] == [1, 2]
        rewards = [r["stage2_reward"] for r in data["records"]]
        assert data["mean_reward"] == pytest.approx(np.mean(rewards))
        assert benchmark_mean(path) == data["mean_reward"]
        for r in data["records"]:
            assert r["stage2_reward"] >= r["stage1_reward"] - 1e-12
            assert r["num_configurations"] == 81

    def test_same_seed_same_record(self, tiny_run, tmp_path):
        a = cmd_benchmark(tiny_run, seeds=[5], output_dir=tmp_path / "a").read_bytes()
        b = cmd_benchmark(tiny_run, seeds=[5], output_dir=tmp_path / "b").read_bytes()
        assert a == b

    def test_search_space_guard_writes_nothing(self, tmp_path):
        run = RunConfig.from_config({"scenario": {"users_per_vsp": 6, "subchannels": 4}, "total_steps": 10})
        with pytest.raises(SearchSpaceTooLarge):
            cmd_benchmark(run, output_dir=tmp_path)
        assert not (tmp_path / BENCHMARK_FILE).exists()


class TestPlot:
    def test_curves_with_benchmark_line(self, tmp_path):
        csv = write_csv(tmp_path / "run.csv", [[1, 0.0, 0.0], [2, 1.0, 0.5]])
        bench = tmp_path / "bench" / BENCHMARK_FILE
        bench.parent.mkdir()
        bench.write_text(json.dumps({"mean_reward": 0.8}))
        out = cmd_plot("curves", [csv], tmp_path / "fig", benchmarks=[bench])
        assert out == tmp_path / "fig.svg"
        assert out.read_text().lstrip().startswith("<?xml")

    def test_empty_input_writes_no_figure(self, tmp_path):
        csv = write_csv(tmp_path / "empty.csv", [])
        with pytest.raises(EmptyInput):
            cmd_plot("curves", [csv], tmp_path / "fig.svg")
        assert not (tmp_path / "fig.svg").exists()

    def test_schema_mismatch_and_missing_files(self, tmp_path):
        csv = write_csv(tmp_path / "odd.csv", [[1, 2.0]], columns=("step", "loss"))
        with pytest.raises(SchemaMismatch):
            cmd_plot("bars", [csv], tmp_path / "fig.svg")
        with pytest.raises(FileNotFoundError):
            cmd_plot("curves", [tmp_path / "absent.csv"], tmp_path / "fig.svg")
        with pytest.raises(InvalidConfig):
            cmd_plot("pie", [csv], tmp_path / "fig.svg")
        with pytest.raises(InvalidConfig):
            cmd_plot("geometry", [], tmp_path / "fig.svg")
        assert not (tmp_path / "fig.svg").exists()

    def test_bar_heights_are_final_smoothed_rewards(self, tmp_path):
        a = write_csv(tmp_path / "a.csv", [[1, 0.0, 0.1], [2, 0.0, 0.7]])
        b = write_csv(tmp_path / "b.csv", [[1, 0.0, 0.2], [2, 0.0, 0.3]])
        c = write_csv(tmp_path / "c.csv", [[1, 0.0, -1.0]])
        path, heights = ResultPlotter().final_reward_bars({"K=3": {"RIS": [a, b]}, "K=4": {"RIS": [c]}},
                                                          tmp_path / "bars.pdf")
        assert path.suffix == ".pdf" and path.exists()
        assert heights == {"K=3": {"RIS": pytest.approx(0.5)}, "K=4": {"RIS": -1.0}}

    def test_geometry(self, tiny_run, tmp_path):
        out = cmd_plot("geometry", [], tmp_path / "deployment", run_config=tiny_run, fmt="png")
        assert out.suffix == ".png" and out.stat().st_size > 0


def test_sweep_report(tiny_run, tmp_path):
    """Test per-value medians, spread and the sweep figure"""
    run = tiny_run.with_updates(total_steps=12)
    path = cmd_sweep(run, "lr", [1e-4, 1e-3], agents=["ddpg"], output_dir=tmp_path)
    report = json.loads(path.read_text())
    assert report["axis"] == "lr"
    assert report["agents"] == ["ddpg"]
    assert len(report["runs"]) == 4
    for value in ("0.0001", "0.001"):
        finals = [r["final"] for r in report["runs"] if str(r["value"]) == value]
        assert report["medians"]["ddpg"][value] == pytest.approx(np.median(finals))
    medians = list(report["medians"]["ddpg"].values())
    assert report["spread"]["ddpg"]["absolute"] == pytest.approx(max(medians) - min(medians))
    assert (tmp_path / "lr_0.001" / "ddpg_seed2.csv").exists()

    figure = cmd_plot("sweep", [path], tmp_path / "sweep.svg")
    assert figure.exists()
    with pytest.raises(InvalidConfig):
        cmd_sweep(run, "gamma", [0.9], output_dir=tmp_path)


def test_validate_config():
    summary = cmd_validate_config("preset:default", ["users_per_vsp=2", "total_steps=50"])
    assert summary["source"] == "preset:default"
    assert summary["total_steps"] == 50
    assert summary["benchmark_candidates"] == 5 ** 4
    assert summary["benchmark_feasible"]
    assert summary["action_dim"] == 2 * 2 * 1 * 2 * 4 + 8
