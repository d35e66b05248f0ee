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
Command Line Interface
======================

`rss` entry point: train, benchmark, plot, sweep, validate-config, experiment.
"""

import argparse
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

try:
    from rich.console import Console
    from rich.panel import Panel
    from rich.table import Table
    from rich import box
    RICH_AVAILABLE = True
except ImportError:
    RICH_AVAILABLE = False

from . import __version__
from .config import list_presets, load_run_config
from .exceptions import InvalidConfig
from .harness.experiments import EXPERIMENTS, run_experiment
from .harness.metrics import read_json
from .harness.plotting import PLOT_STYLES
from .harness.runner import (SWEEP_AXES, cmd_benchmark, cmd_plot, cmd_sweep, cmd_train,
                             cmd_validate_config)
from .learning.common import AGENT_KINDS
from .utils.logger import LogCategory, setup_logging

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_RUNTIME_ERROR = 3


def parse_seeds(text: Optional[str]) -> Optional[List[int]]:
    """'1,2,3' -> [1, 2, 3]"""
    if text is None:
        return None
    try:
        seeds = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InvalidConfig("--seeds", f"expected comma-separated integers, got {text!r}")
    if not seeds:
        raise InvalidConfig("--seeds", "must name at least one seed")
    return seeds


def parse_values(axis: str, text: str) -> List[Any]:
    """Sweep values; integers for the batch axis, floats for lr"""
    cast = int if axis == "batch" else float
    try:
        values = [cast(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InvalidConfig("--values", f"cannot parse {text!r} for axis {axis}")
    if not values:
        raise InvalidConfig("--values", "must name at least one value")
    return values


class WorkbenchCLI:
    """Command Line Interface for the spectrum sharing workbench"""

    def __init__(self, use_rich: bool = True):
        self.use_rich = use_rich and RICH_AVAILABLE
        self.console = Console() if self.use_rich else None
        self.version = __version__
        self.session_stats = {
            'training_runs': 0,
            'benchmarks_run': 0,
            'figures_created': 0,
            'sweeps_run': 0,
            'start_time': datetime.now()
        }

    def show(self, title: str, rows: Sequence[Sequence[Any]], columns: Sequence[str] = ("Item", "Value")):
        """Print a two-or-more column summary"""
        if not self.use_rich:
            print(f"\n{title}")
            for row in rows:
                print("  " + " | ".join(str(cell) for cell in row))
            return
        table = Table(title=title, box=box.ROUNDED)
        for i, column in enumerate(columns):
            table.add_column(column, style="cyan" if i == 0 else "white")
        for row in rows:
            table.add_row(*[str(cell) for cell in row])
        self.console.print(table)

    def message(self, text: str, style: str = "green"):
        if self.use_rich:
            self.console.print(f"[{style}]{text}[/{style}]")
        else:
            print(text)

    def error(self, text: str):
        if self.use_rich:
            Console(stderr=True).print(Panel(text, border_style="red", title="Error"))
        else:
            print(text, file=sys.stderr)

    def _run_config(self, args):
        return load_run_config(args.config, args.override or (), parse_seeds(args.seeds), args.out, args.jobs)

    def train(self, args) -> int:
        run_config = self._run_config(args)
        if args.agent:
            run_config = run_config.with_updates(agent=args.agent)
        if args.steps:
            run_config = run_config.with_updates(total_steps=args.steps)
        result = cmd_train(run_config, resume=args.resume, progress_bar=args.progress)
        self.session_stats['training_runs'] += len(result["runs"])
        self.show("Training runs", [(run["agent"], run["seed"], f"{run['final_smoothed']:.4f}", run["path"])
                                    for run in result["runs"]],
                  ("Agent", "Seed", "Final smoothed reward", "Metrics"))
        for agent_kind, path in result["aggregates"].items():
            self.message(f"{agent_kind} aggregate: {path}")
        return EXIT_OK

    def benchmark(self, args) -> int:
        run_config = self._run_config(args)
        path = cmd_benchmark(run_config, progress_bar=args.progress)
        data = read_json(path)
        self.session_stats['benchmarks_run'] += len(data["records"])
        self.show("Benchmark", [(r["seed"], f"{r['stage1_reward']:.4f}", f"{r['stage2_reward']:.4f}",
                                 r["iterations"]) for r in data["records"]],
                  ("Seed", "Stage 1", "Stage 2", "SCA iterations"))
        self.message(f"Mean reward {data['mean_reward']:.6g} -> {path}")
        return EXIT_OK

    def plot(self, args) -> int:
        run_config = self._run_config(args) if args.style == "geometry" else None
        labels = args.labels.split(",") if args.labels else None
        path = cmd_plot(args.style, args.inputs, args.output, labels=labels,
                        benchmarks=args.benchmark or (), run_config=run_config, fmt=args.format)
        self.session_stats['figures_created'] += 1
        self.message(f"Figure written: {path}")
        return EXIT_OK

    def sweep(self, args) -> int:
        run_config = self._run_config(args)
        if args.steps:
            run_config = run_config.with_updates(total_steps=args.steps)
        values = parse_values(args.axis, args.values)
        path = cmd_sweep(run_config, args.axis, values, agents=args.agents.split(","),
                         progress_bar=args.progress)
        report = read_json(path)
        self.session_stats['sweeps_run'] += 1
        self.show(f"Sweep over {args.axis}",
                  [(agent, *[f"{report['medians'][agent][str(v)]:.4f}" for v in values],
                    f"{report['spread'][agent]['absolute']:.4f}") for agent in report["agents"]],
                  ("Agent", *[str(v) for v in values], "Spread"))
        self.message(f"Report: {path}")
        return EXIT_OK

    def validate_config(self, args) -> int:
        summary = cmd_validate_config(args.config, args.override or ())
        rows = [("source", summary["source"]), ("agent", summary["agent"]), ("seeds", summary["seeds"]),
                ("total_steps", summary["total_steps"]), ("state_dim", summary["state_dim"]),
                ("action_dim", summary["action_dim"]),
                ("benchmark candidates", summary["benchmark_candidates"]),
                ("benchmark feasible", summary["benchmark_feasible"])]
        rows += [(f"scenario.{key}", value) for key, value in summary["scenario"].items()]
        self.show("Configuration OK", rows)
        return EXIT_OK

    def experiment(self, args) -> int:
        if args.name == "list":
            self.show("Experiments", [(name, (fn.__doc__ or "").strip()) for name, fn in EXPERIMENTS.items()],
                      ("Name", "Description"))
            return EXIT_OK
        result = run_experiment(args.name, Path(args.out or "runs"), parse_seeds(args.seeds), args.steps,
                                args.jobs, args.progress, args.format)
        self.session_stats['figures_created'] += 1
        self.message(f"Experiment {args.name}: {result['figure']}")
        return EXIT_OK


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="Run config file or preset:<name> (default: preset:default)")
    parser.add_argument("--seeds", help="Comma-separated seeds, e.g. 1,2,3")
    parser.add_argument("--out", help="Output directory")
    parser.add_argument("--override", action="append", metavar="KEY=VALUE",
                        help="Dotted override, repeatable (users_per_vsp=4, hyperparameters.lr=5e-4)")
    parser.add_argument("--jobs", type=int, help="Parallel worker processes")
    parser.add_argument("--progress", action="store_true", help="Show a progress bar")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rss",
        description="RIS Spectrum Sharing Workbench",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"""
Examples:
  rss train --config preset:ris_m16 --seeds 1,2,3 --out runs/m16
  rss train --override hyperparameters.lr=5e-4 --agent ddpg
  rss benchmark --config preset:ris_m16 --seeds 1,2,3,4,5 --out runs/m16
  rss plot --style curves runs/m16/sac_seed1.csv runs/m16/ddpg_seed1.csv --benchmark runs/m16/benchmark.json
  rss sweep --axis lr --values 1e-4,5e-4,1e-3 --config preset:hyperparam
  rss validate-config --config my_run.json
  rss experiment users --steps 5000 --jobs 4

Presets: {', '.join(list_presets())}
        """
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--log-level", default="WARNING", help="Console log level")
    parser.add_argument("--log-dir", help="Write log files to this directory")
    parser.add_argument("--no-rich", action="store_true", help="Disable rich formatting")
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="Train learners, one run per seed")
    _add_common(train)
    train.add_argument("--agent", choices=AGENT_KINDS, help="Override the configured agent")
    train.add_argument("--steps", type=int, help="Override total training steps")
    train.add_argument("--resume", action="store_true", help="Resume from checkpoints in the output directory")

    benchmark = sub.add_parser("benchmark", help="Exhaustive search + power refinement benchmark")
    _add_common(benchmark)

    plot = sub.add_parser("plot", help="Figures from metrics files")
    _add_common(plot)
    plot.add_argument("inputs", nargs="*", help="Metrics CSVs (sweep: the sweep report)")
    plot.add_argument("--style", choices=PLOT_STYLES, default="curves")
    plot.add_argument("--output", default="figure", help="Output file (suffix from --format if missing)")
    plot.add_argument("--labels", help="Comma-separated labels, one per input")
    plot.add_argument("--benchmark", action="append", help="Benchmark file drawn as a horizontal line")
    plot.add_argument("--format", choices=("svg", "pdf", "png"), default="svg")

    sweep = sub.add_parser("sweep", help="Learning-rate or batch-size sweep for both learners")
    _add_common(sweep)
    sweep.add_argument("--axis", choices=SWEEP_AXES, required=True)
    sweep.add_argument("--values", required=True, help="Comma-separated values")
    sweep.add_argument("--agents", default=",".join(AGENT_KINDS))
    sweep.add_argument("--steps", type=int, help="Override total training steps")

    validate = sub.add_parser("validate-config", help="Resolve a config and build its scenario")
    _add_common(validate)

    experiment = sub.add_parser("experiment", help="Run a named experiment from the catalog")
    _add_common(experiment)
    experiment.add_argument("name", choices=sorted(EXPERIMENTS) + ["list"])
    experiment.add_argument("--steps", type=int, help="Scaled-down total training steps")
    experiment.add_argument("--format", choices=("svg", "pdf", "png"), default="svg")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the CLI"""
    parser = build_parser()
    args = parser.parse_args(argv)

    cli = WorkbenchCLI(use_rich=not args.no_rich)
    logger = setup_logging(args.log_dir, args.log_level, console=True)
    handlers = {
        "train": cli.train,
        "benchmark": cli.benchmark,
        "plot": cli.plot,
        "sweep": cli.sweep,
        "validate-config": cli.validate_config,
        "experiment": cli.experiment,
    }

    try:
        return handlers[args.command](args)
    except InvalidConfig as e:
        source = e.source or (args.config or "preset:default")
        cli.error(f"config error: {source}: {e.field}: {e.reason}")
        return EXIT_CONFIG_ERROR
    except FileNotFoundError as e:
        cli.error(f"config error: {e.filename or args.config or ''}: <file>: {e.strerror or e}")
        return EXIT_CONFIG_ERROR
    except KeyboardInterrupt:
        cli.error("interrupted")
        return EXIT_RUNTIME_ERROR
    except Exception as e:
        logger.error(f"{args.command} failed: {e}", LogCategory.SYSTEM)
        cli.error(f"error: {type(e).__name__}: {e}")
        return EXIT_RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
