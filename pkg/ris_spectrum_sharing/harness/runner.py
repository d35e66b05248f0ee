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
Koşu Yürütücü Modülü
====================

Eğitim, benchmark, çizim, süpürme ve konfigürasyon doğrulama komutları.
"""

import errno
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import RunConfig, load_run_config
from ..core.channel import draw_channels
from ..core.scenario import fix_ris_association
from ..exceptions import EmptyInput, InvalidConfig
from ..learning.common import AGENT_KINDS, AgentHyperparameters
from ..learning.checkpoint import CHECKPOINT_STATE, load_checkpoint
from ..learning.trainer import train
from ..optimization.eds import eds_solve_detailed
from ..optimization.enumeration import MAX_CANDIDATES, candidate_count, check_search_space
from ..simulation.environment import state_dim
from ..utils.logger import LogCategory, get_logger
from .metrics import (aggregate_runs, benchmark_mean, final_smoothed, read_json, truncate_metrics,
                      write_json, write_metrics_csv)
from .parallel import ParallelRunner
from .plotting import PLOT_STYLES, ResultPlotter


PathLike = Union[str, Path]

SWEEP_AXES = ("lr", "batch")
BENCHMARK_FILE = "benchmark.json"
SWEEP_REPORT_FILE = "sweep_report.json"
RUN_CONFIG_FILE = "run_config.json"


def run_file(output_dir: PathLike, agent_kind: str, seed: int) -> Path:
    return Path(output_dir) / f"{agent_kind}_seed{seed}.csv"


def aggregate_file(output_dir: PathLike, agent_kind: str) -> Path:
    return Path(output_dir) / f"{agent_kind}_aggregate.csv"


def _train_task(task: Tuple[RunConfig, str, int, str, Optional[str], bool]) -> Dict[str, Any]:
    """Tek (ajan, tohum) koşusu; süreç havuzunda çalışır"""
    run_config, agent_kind, seed, path, checkpoint_dir, resume = task
    scenario = run_config.build_scenario()
    resume_from = None
    if (resume and checkpoint_dir is not None and Path(path).exists()
            and (Path(checkpoint_dir) / CHECKPOINT_STATE).exists()):
        resume_from = checkpoint_dir
        truncate_metrics(path, int(load_checkpoint(checkpoint_dir)["progress"]["step"]))

    start_time = time.time()
    records = train(agent_kind, scenario, run_config, seed,
                    checkpoint_dir=checkpoint_dir, resume_from=resume_from)
    info = write_metrics_csv(path, records, scenario.num_vsps, run_config.log_wall_clock,
                             append=resume_from is not None)
    info.update({"agent": agent_kind, "seed": seed, "resumed": resume_from is not None,
                 "elapsed_seconds": time.time() - start_time})
    if info["final_smoothed"] is None:
        info["final_smoothed"] = final_smoothed(path)
    return info


def _agent_list(run_config: RunConfig, agents: Optional[Sequence[str]]) -> List[str]:
    agents = list(agents) if agents else [run_config.agent]
    for agent_kind in agents:
        if agent_kind not in AGENT_KINDS:
            raise InvalidConfig("agent", f"'{agent_kind}' has no learner to train; expected one of {AGENT_KINDS}",
                                run_config.source)
    return agents


def cmd_train(run_config: RunConfig, agents: Optional[Sequence[str]] = None,
              output_dir: Optional[PathLike] = None, resume: bool = False,
              progress_bar: bool = False) -> Dict[str, Any]:
    """
    Her tohum için eğitim koşturur, tohum ve toplama CSV'lerini yazar

    Args:
        run_config: Koşu konfigürasyonu
        agents: Eğitilecek ajanlar (None: run_config.agent)
        output_dir: Çıktı dizini (None: run_config.output_dir)
        resume: Mevcut checkpoint'lerden devam et
        progress_bar: tqdm ilerleme çubuğu

    Returns:
        dict: runs, aggregates (ajan -> yol), config (yol)
    """
    logger = get_logger()
    agents = _agent_list(run_config, agents)
    output_dir = Path(output_dir or run_config.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    scenario = run_config.build_scenario()
    logger.log_scenario_built(scenario.summary())

    tasks = []
    for agent_kind in agents:
        for seed in run_config.seeds:
            checkpoint_dir = None
            if run_config.checkpoint_every:
                checkpoint_dir = str(output_dir / "checkpoints" / f"{agent_kind}_seed{seed}")
            tasks.append((run_config, agent_kind, seed, str(run_file(output_dir, agent_kind, seed)),
                          checkpoint_dir, resume))

    runner = ParallelRunner(run_config.jobs, progress_bar, description="training")
    runs = runner.map(_train_task, tasks)

    aggregates = {}
    for agent_kind in agents:
        paths = [run["path"] for run in runs if run["agent"] == agent_kind]
        aggregates[agent_kind] = str(aggregate_runs(paths, aggregate_file(output_dir, agent_kind)))
        logger.log_artifact("aggregate", aggregates[agent_kind])

    config_path = write_json(output_dir / RUN_CONFIG_FILE, run_config.to_dict())
    logger.info(f"Training finished: {len(runs)} runs in {runner.stats['elapsed_seconds']:.1f}s",
                LogCategory.HARNESS, {"output_dir": str(output_dir)})
    return {"runs": runs, "aggregates": aggregates, "config": str(config_path)}


def _benchmark_task(task: Tuple[RunConfig, int]) -> Dict[str, Any]:
    run_config, seed = task
    scenario = run_config.build_scenario()
    real = draw_channels(scenario, np.random.default_rng(seed))
    _, breakdown, record = eds_solve_detailed(
        scenario, real, assoc=fix_ris_association(scenario),
        max_iterations=int(run_config.benchmark["max_iterations"]),
        tolerance=float(run_config.benchmark["tolerance"]))
    get_logger().log_benchmark_result(seed, record.stage1_reward, record.stage2_reward, record.iterations)
    result = {"seed": seed, "sum_rate": breakdown.sum_rate, "utility": [float(u) for u in breakdown.utility]}
    result.update(record.to_dict())
    return result


def cmd_benchmark(run_config: RunConfig, seeds: Optional[Sequence[int]] = None,
                  output_dir: Optional[PathLike] = None, progress_bar: bool = False) -> Path:
    """
    Tohum başına bir kanal gerçekleşmesinde EDS + SCA kıyası

    Returns:
        Path: Benchmark kayıt dosyası (kayıtlar + ortalama ödül)

    Raises:
        SearchSpaceTooLarge: Numaralandırma koruması aşılırsa
    """
    seeds = list(seeds) if seeds is not None else list(run_config.seeds)
    if not seeds:
        raise InvalidConfig("seeds", "must be non-empty", run_config.source)
    scenario = run_config.build_scenario()
    check_search_space(scenario)
    output_dir = Path(output_dir or run_config.output_dir)

    runner = ParallelRunner(run_config.jobs, progress_bar, description="benchmark")
    records = runner.map(_benchmark_task, [(run_config, seed) for seed in seeds])
    rewards = [record["stage2_reward"] for record in records]
    path = write_json(output_dir / BENCHMARK_FILE, {
        "scenario": scenario.summary(),
        "seeds": seeds,
        "records": records,
        "mean_reward": float(np.mean(rewards)),
    })
    get_logger().log_artifact("benchmark", str(path))
    return path


def sweep_panel_files(report: Dict[str, Any]) -> Dict[str, Dict[str, List[str]]]:
    panels: Dict[str, Dict[str, List[str]]] = {}
    for run in report["runs"]:
        panels.setdefault(run["agent"], {}).setdefault(str(run["value"]), []).append(run["path"])
    return panels


def cmd_plot(style: str, inputs: Sequence[PathLike], output: PathLike,
             labels: Optional[Sequence[str]] = None, benchmarks: Sequence[PathLike] = (),
             run_config: Optional[RunConfig] = None, fmt: str = "svg") -> Path:
    """
    Metrik dosyalarından vektörel figür üretir

    Args:
        style: curves, bars, sweep ya da geometry
        inputs: Metrik CSV'leri (sweep için süpürme raporu)
        output: Çıktı dosyası
        labels: Girdi başına etiket (None: dosya adı)
        benchmarks: Yatay çizgi olarak çizilecek benchmark dosyaları
        run_config: geometry için senaryo kaynağı

    Raises:
        EmptyInput: Girdi yok ya da boş
        SchemaMismatch: Kolonlar eksik
    """
    if style not in PLOT_STYLES:
        raise InvalidConfig("style", f"must be one of {PLOT_STYLES}, got {style!r}")
    plotter = ResultPlotter(fmt=fmt)

    if style == "geometry":
        if run_config is None:
            raise InvalidConfig("config", "geometry plot needs a scenario configuration")
        return plotter.geometry(run_config.build_scenario(), output)

    inputs = [Path(p) for p in inputs]
    if not inputs:
        raise EmptyInput("no input files given")
    for path in list(inputs) + [Path(p) for p in benchmarks]:
        if not path.exists():
            raise FileNotFoundError(errno.ENOENT, "input file not found", str(path))
    if labels is not None and len(labels) != len(inputs):
        raise InvalidConfig("labels", f"expected {len(inputs)} labels, got {len(labels)}")
    labels = list(labels) if labels is not None else [p.stem for p in inputs]

    if style == "curves":
        lines = {f"Benchmark ({Path(p).parent.name or Path(p).stem})": benchmark_mean(p) for p in benchmarks}
        return plotter.learning_curves({label: [p] for label, p in zip(labels, inputs)}, output, lines)
    if style == "bars":
        table = {label: {"final": [p]} for label, p in zip(labels, inputs)}
        path, _ = plotter.final_reward_bars(table, output)
        return path
    report = read_json(inputs[0])
    return plotter.sweep_panels(sweep_panel_files(report), output, axis_label=report["axis"])


def _sweep_value(axis: str, value: Any) -> Dict[str, Any]:
    if axis == "lr":
        lr = float(value)
        return {"actor_lr": lr, "critic_lr": lr}
    return {"batch_size": int(value)}


def cmd_sweep(run_config: RunConfig, axis: str, values: Sequence[Any],
              agents: Sequence[str] = AGENT_KINDS, output_dir: Optional[PathLike] = None,
              progress_bar: bool = False) -> Path:
    """
    Öğrenme hızı ya da yığın boyutu süpürmesi

    Her değer için iki ajan da eğitilir (lr ekseninde aktör ve kritik hızı eşit).
    Rapor, koşu başına son yumuşatılmış ödülü, değer başına tohum medyanını ve
    ajan başına medyanların yayılımını (max - min ve en iyiye göre oranı) içerir.

    Returns:
        Path: Süpürme raporu
    """
    if axis not in SWEEP_AXES:
        raise InvalidConfig("axis", f"must be one of {SWEEP_AXES}, got {axis!r}")
    values = list(values)
    if not values:
        raise InvalidConfig("values", "must be non-empty")
    agents = _agent_list(run_config, agents)
    output_dir = Path(output_dir or run_config.output_dir)
    logger = get_logger()

    tasks = []
    points = []
    for value in values:
        updates = _sweep_value(axis, value)
        hp = run_config.hyperparameters.to_dict()
        hp.update(updates)
        config = run_config.with_updates(hyperparameters=AgentHyperparameters(**hp))
        for agent_kind in agents:
            logger.log_sweep_point(axis, value, agent_kind)
            for seed in run_config.seeds:
                path = run_file(output_dir / f"{axis}_{value}", agent_kind, seed)
                tasks.append((config, agent_kind, seed, str(path), None, False))
                points.append(value)

    runner = ParallelRunner(run_config.jobs, progress_bar, description=f"{axis} sweep")
    results = runner.map(_train_task, tasks)

    runs = []
    for value, result in zip(points, results):
        runs.append({"agent": result["agent"], "seed": result["seed"], "path": result["path"],
                     "value": value, "final": final_smoothed(result["path"])})

    medians: Dict[str, Dict[str, float]] = {}
    spread: Dict[str, Dict[str, float]] = {}
    aggregates: Dict[str, Dict[str, str]] = {}
    for agent_kind in agents:
        medians[agent_kind] = {}
        aggregates[agent_kind] = {}
        for value in values:
            chosen = [run for run in runs if run["agent"] == agent_kind and run["value"] == value]
            medians[agent_kind][str(value)] = float(np.median([run["final"] for run in chosen]))
            aggregates[agent_kind][str(value)] = str(aggregate_runs(
                [run["path"] for run in chosen], aggregate_file(output_dir / f"{axis}_{value}", agent_kind)))
        finals = np.array(list(medians[agent_kind].values()))
        best = float(np.max(finals))
        absolute = float(np.max(finals) - np.min(finals))
        spread[agent_kind] = {"absolute": absolute,
                              "relative": absolute / abs(best) if best != 0.0 else float("inf")}

    path = write_json(output_dir / SWEEP_REPORT_FILE, {
        "axis": axis,
        "values": values,
        "agents": agents,
        "seeds": list(run_config.seeds),
        "runs": runs,
        "medians": medians,
        "spread": spread,
        "aggregates": aggregates,
    })
    logger.log_artifact("sweep report", str(path))
    return path


def cmd_validate_config(reference: Optional[PathLike] = None, overrides: Sequence[str] = ()) -> Dict[str, Any]:
    """
    Konfigürasyonu çözer ve senaryoyu kurar; hiçbir koşu başlatmaz

    Returns:
        dict: Kaynak, senaryo özeti, boyutlar ve benchmark arama uzayı
    """
    run_config = load_run_config(reference, overrides)
    scenario = run_config.build_scenario()
    count = candidate_count(scenario)
    return {
        "source": run_config.source,
        "agent": run_config.agent,
        "seeds": list(run_config.seeds),
        "total_steps": run_config.total_steps,
        "scenario": scenario.summary(),
        "state_dim": state_dim(scenario),
        "action_dim": scenario.action_dim,
        "benchmark_candidates": count,
        "benchmark_feasible": count <= MAX_CANDIDATES,
    }
