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
Deney Kataloğu Modülü
=====================

Ön ayar tabanlı, isimli değerlendirme protokolleri. Her deney kendi alt
dizinine koşu dosyalarını ve bir figür yazar.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from ..config import PRESET_PREFIX, RunConfig, load_run_config
from ..exceptions import InvalidConfig
from ..utils.logger import LogCategory, get_logger
from .metrics import benchmark_mean, read_json
from .plotting import ResultPlotter
from .runner import cmd_benchmark, cmd_sweep, cmd_train, sweep_panel_files

USER_COUNTS = (3, 4, 5, 6)
LEARNING_RATES = (1e-4, 5e-4, 1e-3)
BATCH_SIZES = (16, 64, 256)


@dataclass
class ExperimentContext:
    """Deneyler arası ortak ayarlar"""
    output_dir: Path
    seeds: Optional[List[int]] = None
    steps: Optional[int] = None
    jobs: Optional[int] = None
    progress_bar: bool = False
    fmt: str = "svg"

    def run_config(self, preset: str, overrides: Sequence[str] = ()) -> RunConfig:
        config = load_run_config(f"{PRESET_PREFIX}{preset}", overrides, seeds=self.seeds, jobs=self.jobs)
        if self.steps is not None:
            config = config.with_updates(total_steps=int(self.steps))
        return config

    def plotter(self) -> ResultPlotter:
        return ResultPlotter(fmt=self.fmt)


def _run_paths(result: Dict[str, Any], agent_kind: str) -> List[str]:
    return [run["path"] for run in result["runs"] if run["agent"] == agent_kind]


def ris_elements(ctx: ExperimentContext) -> Dict[str, Any]:
    """SAC ve DDPG, M=4 ve M=16, EDS benchmark çizgileriyle"""
    groups, lines, artifacts = {}, {}, {}
    for preset, elements in (("ris_m4", 4), ("ris_m16", 16)):
        config = ctx.run_config(preset)
        out = ctx.output_dir / preset
        result = cmd_train(config, agents=("ddpg", "sac"), output_dir=out, progress_bar=ctx.progress_bar)
        benchmark = cmd_benchmark(config, output_dir=out, progress_bar=ctx.progress_bar)
        for agent_kind in ("sac", "ddpg"):
            groups[f"{agent_kind.upper()}, M={elements}"] = _run_paths(result, agent_kind)
        lines[f"EDS benchmark, M={elements}"] = benchmark_mean(benchmark)
        artifacts[preset] = {"aggregates": result["aggregates"], "benchmark": str(benchmark)}
    figure = ctx.plotter().learning_curves(groups, ctx.output_dir / "ris_elements", lines,
                                           title="Reward vs RIS elements")
    return {"figure": str(figure), "benchmarks": lines, "artifacts": artifacts}


def spectrum(ctx: ExperimentContext) -> Dict[str, Any]:
    """Tamamen özel ve tamamen yeniden kullanılabilir alt kanal yapılandırmaları"""
    groups, artifacts = {}, {}
    for preset, label in (("spectrum_dedicated", "Dedicated subchannels"),
                          ("spectrum_reuse", "Reusable subchannels")):
        result = cmd_train(ctx.run_config(preset), agents=("sac",), output_dir=ctx.output_dir / preset,
                           progress_bar=ctx.progress_bar)
        groups[label] = _run_paths(result, "sac")
        artifacts[preset] = result["aggregates"]
    figure = ctx.plotter().learning_curves(groups, ctx.output_dir / "spectrum",
                                           title="Reward vs spectrum configuration")
    return {"figure": str(figure), "artifacts": artifacts}


def users(ctx: ExperimentContext) -> Dict[str, Any]:
    """VSP başına kullanıcı sayısına göre son ödül, RIS'li ve RIS'siz"""
    table: Dict[str, Dict[str, List[str]]] = {}
    for count in USER_COUNTS:
        category = f"K={count}"
        table[category] = {}
        for preset, label in (("multi_bs_ris", "With RIS"), ("multi_bs_no_ris", "Without RIS")):
            config = ctx.run_config(preset, [f"users_per_vsp={count}"])
            result = cmd_train(config, agents=("sac",), output_dir=ctx.output_dir / f"{preset}_k{count}",
                               progress_bar=ctx.progress_bar)
            table[category][label] = _run_paths(result, "sac")
    figure, heights = ctx.plotter().final_reward_bars(table, ctx.output_dir / "users",
                                                      xlabel="Users per VSP", title="Final reward vs users")
    return {"figure": str(figure), "final_rewards": heights}


def _sweep(ctx: ExperimentContext, axis: str, values: Sequence[Any], name: str) -> Dict[str, Any]:
    report = cmd_sweep(ctx.run_config("hyperparam"), axis, values, output_dir=ctx.output_dir / name,
                       progress_bar=ctx.progress_bar)
    data = read_json(report)
    figure = ctx.plotter().sweep_panels(sweep_panel_files(data), ctx.output_dir / name, axis_label=axis)
    return {"figure": str(figure), "report": str(report), "spread": data["spread"]}


def learning_rate(ctx: ExperimentContext) -> Dict[str, Any]:
    """Eşit aktör/kritik öğrenme hızı süpürmesi"""
    return _sweep(ctx, "lr", LEARNING_RATES, "learning_rate")


def batch_size(ctx: ExperimentContext) -> Dict[str, Any]:
    return _sweep(ctx, "batch", BATCH_SIZES, "batch_size")


def geometry(ctx: ExperimentContext) -> Dict[str, Any]:
    """Varsayılan senaryonun yerleşim figürü"""
    figure = ctx.plotter().geometry(ctx.run_config("default").build_scenario(), ctx.output_dir / "geometry")
    return {"figure": str(figure)}


EXPERIMENTS: Dict[str, Callable[[ExperimentContext], Dict[str, Any]]] = {
    "ris-elements": ris_elements,
    "spectrum": spectrum,
    "users": users,
    "learning-rate": learning_rate,
    "batch-size": batch_size,
    "geometry": geometry,
}


def run_experiment(name: str, output_dir: Path, seeds: Optional[Sequence[int]] = None,
                   steps: Optional[int] = None, jobs: Optional[int] = None,
                   progress_bar: bool = False, fmt: str = "svg") -> Dict[str, Any]:
    """
    Katalogdaki bir deneyi çalıştırır

    Args:
        name: Deney adı
        output_dir: Çıktı kök dizini
        seeds: Tohumlar (None: ön ayardaki)
        steps: Kısaltılmış T (None: ön ayardaki)
        jobs: İşlem sayısı

    Returns:
        dict: Figür yolu ve deneye özgü özet
    """
    if name not in EXPERIMENTS:
        raise InvalidConfig("experiment", f"unknown experiment {name!r}; choose from {sorted(EXPERIMENTS)}")
    ctx = ExperimentContext(Path(output_dir) / name.replace("-", "_"),
                            list(seeds) if seeds is not None else None, steps, jobs, progress_bar, fmt)
    get_logger().info(f"Running experiment {name}", LogCategory.HARNESS,
                      {"seeds": ctx.seeds, "steps": steps, "jobs": jobs})
    result = EXPERIMENTS[name](ctx)
    result["name"] = name
    return result
