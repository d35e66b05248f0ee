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
Plotting Module
===============

Vector-graphic figures for learning curves, final-reward bar charts, sweep panels
and the deployment geometry.
"""

from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import matplotlib
matplotlib.use('Agg')  # Non-interactive backend

import matplotlib.pyplot as plt
import networkx as nx
import numpy as np
import pandas as pd

from ..core.scenario import RisAssociation, Scenario, fix_ris_association, topology_graph
from ..exceptions import EmptyInput, SchemaMismatch
from ..utils.logger import LogCategory, get_logger


PathLike = Union[str, Path]

SMOOTHED_COLUMNS = ("reward_smoothed", "reward_smoothed_mean")
PLOT_STYLES = ("curves", "bars", "sweep", "geometry")


def load_curve(path: PathLike) -> pd.DataFrame:
    """
    Read a per-seed or aggregate metrics file as (step, value)

    Raises:
        SchemaMismatch: neither a smoothed-reward nor a step column is present
        EmptyInput: the file has no rows
    """
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except pd.errors.EmptyDataError:
        raise EmptyInput(f"{path}: file is empty")
    column = next((c for c in SMOOTHED_COLUMNS if c in frame.columns), None)
    if column is None or "step" not in frame.columns:
        missing = [c for c in ("step", SMOOTHED_COLUMNS[0]) if c not in frame.columns]
        raise SchemaMismatch(str(path), missing)
    if frame.empty:
        raise EmptyInput(f"{path}: no metrics rows")
    return pd.DataFrame({"step": frame["step"].to_numpy(), "value": frame[column].to_numpy(dtype=float)})


def mean_curve(paths: Sequence[PathLike]):
    """Mean smoothed reward over runs, aligned on common steps"""
    curves = [load_curve(p).set_index("step")["value"] for p in paths]
    table = pd.concat(curves, axis=1, join="inner")
    return table.index.to_numpy(), table.mean(axis=1).to_numpy()


def final_value(paths: Sequence[PathLike]) -> float:
    """Mean over runs of the last smoothed reward"""
    return float(np.mean([load_curve(p)["value"].iloc[-1] for p in paths]))


class ResultPlotter:
    """
    Figure writer for training and benchmark results
    """

    def __init__(self, figsize=(8, 5), fontsize=11, fmt: str = "svg"):
        """
        Initialize the plotter

        Args:
            figsize: Figure size (width, height)
            fontsize: Font size for labels
            fmt: Output format (svg, pdf or png)
        """
        self.figsize = figsize
        self.fontsize = fontsize
        self.fmt = fmt
        self.colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]

    def _save(self, fig, output: PathLike) -> Path:
        output = Path(output)
        if not output.suffix:
            output = output.with_suffix(f".{self.fmt}")
        output.parent.mkdir(parents=True, exist_ok=True)
        fig.tight_layout()
        fig.savefig(output, bbox_inches='tight')
        plt.close(fig)
        get_logger().log_artifact("figure", str(output))
        return output

    def learning_curves(self, groups: Mapping[str, Sequence[PathLike]], output: PathLike,
                        benchmarks: Optional[Mapping[str, float]] = None,
                        title: str = "Learning curves") -> Path:
        """
        One curve per group (mean over its runs) plus horizontal benchmark lines

        Args:
            groups: label -> metrics files
            output: Output file
            benchmarks: label -> benchmark reward
        """
        if not groups or not any(groups.values()):
            raise EmptyInput("no metrics files to plot")
        curves = {label: mean_curve(paths) for label, paths in groups.items() if paths}

        fig, ax = plt.subplots(figsize=self.figsize)
        for i, (label, (steps, values)) in enumerate(curves.items()):
            ax.plot(steps, values, color=self.colors[i % len(self.colors)], label=label, linewidth=1.5)
        for j, (label, value) in enumerate((benchmarks or {}).items()):
            ax.axhline(value, color=self.colors[(len(curves) + j) % len(self.colors)],
                       linestyle="--", linewidth=1.2, label=label)
        ax.set_xlabel("Training step", fontsize=self.fontsize)
        ax.set_ylabel("Reward (moving average)", fontsize=self.fontsize)
        ax.set_title(title, fontsize=self.fontsize + 1)
        ax.grid(alpha=0.3)
        ax.legend(fontsize=self.fontsize - 2)
        return self._save(fig, output)

    def final_reward_bars(self, table: Mapping[str, Mapping[str, Sequence[PathLike]]], output: PathLike,
                          xlabel: str = "Configuration", title: str = "Final reward"
                          ) -> Tuple[Path, Dict[str, Dict[str, float]]]:
        """
        Grouped bars of final smoothed reward

        Args:
            table: category -> series -> metrics files

        Returns:
            tuple: (output path, category -> series -> bar height)
        """
        if not table or not any(paths for series in table.values() for paths in series.values()):
            raise EmptyInput("no metrics files to plot")
        categories = list(table)
        series_names: List[str] = []
        for series in table.values():
            for name in series:
                if name not in series_names:
                    series_names.append(name)

        heights = {cat: {name: final_value(paths) for name, paths in table[cat].items() if paths}
                   for cat in categories}

        fig, ax = plt.subplots(figsize=self.figsize)
        width = 0.8 / max(1, len(series_names))
        positions = np.arange(len(categories))
        for i, name in enumerate(series_names):
            values = [heights[cat].get(name, np.nan) for cat in categories]
            ax.bar(positions + (i - (len(series_names) - 1) / 2) * width, values, width,
                   label=name, color=self.colors[i % len(self.colors)])
        ax.set_xticks(positions)
        ax.set_xticklabels(categories)
        ax.set_xlabel(xlabel, fontsize=self.fontsize)
        ax.set_ylabel("Final reward (moving average)", fontsize=self.fontsize)
        ax.set_title(title, fontsize=self.fontsize + 1)
        ax.grid(axis="y", alpha=0.3)
        if len(series_names) > 1:
            ax.legend(fontsize=self.fontsize - 2)
        return self._save(fig, output), heights

    def sweep_panels(self, panels: Mapping[str, Mapping[str, Sequence[PathLike]]], output: PathLike,
                     axis_label: str = "value") -> Path:
        """
        One panel per agent, one curve per swept value

        Args:
            panels: agent -> swept value label -> metrics files
        """
        if not panels or not any(paths for curves in panels.values() for paths in curves.values()):
            raise EmptyInput("no metrics files to plot")
        curves_by_agent = {agent: {value: mean_curve(paths) for value, paths in curves.items() if paths}
                           for agent, curves in panels.items()}
        fig, axes = plt.subplots(1, len(panels), figsize=(self.figsize[0] * len(panels) / 1.5, self.figsize[1]),
                                 squeeze=False)
        for ax, (agent, curves) in zip(axes[0], curves_by_agent.items()):
            for i, (value, (steps, values)) in enumerate(curves.items()):
                ax.plot(steps, values, color=self.colors[i % len(self.colors)],
                        label=f"{axis_label}={value}", linewidth=1.3)
            ax.set_title(agent.upper(), fontsize=self.fontsize + 1)
            ax.set_xlabel("Training step", fontsize=self.fontsize)
            ax.set_ylabel("Reward (moving average)", fontsize=self.fontsize)
            ax.grid(alpha=0.3)
            ax.legend(fontsize=self.fontsize - 2)
        return self._save(fig, output)

    def geometry(self, scenario: Scenario, output: PathLike, assoc: Optional[RisAssociation] = None) -> Path:
        """Deployment figure: VSP discs, BSs, users, RISs and association edges"""
        assoc = assoc if assoc is not None else fix_ris_association(scenario)
        graph = topology_graph(scenario, assoc)
        positions = nx.get_node_attributes(graph, "pos")

        fig, ax = plt.subplots(figsize=self.figsize)
        for v, center in enumerate(scenario.vsp_centers):
            color = self.colors[v % len(self.colors)]
            ax.add_patch(plt.Circle(center, scenario.vsp_radius, fill=False, linestyle="--", color=color))
            ax.annotate(f"VSP {v}", center, textcoords="offset points", xytext=(0, 8), ha="center",
                        fontsize=self.fontsize - 1, color=color)

        styles = {"candidate": dict(style="dotted", alpha=0.25, width=0.8),
                  "control": dict(style="solid", alpha=0.8, width=1.6),
                  "reflect": dict(style="dashed", alpha=0.6, width=1.0)}
        for kind, style in styles.items():
            edges = [(a, b) for a, b, data in graph.edges(data=True) if data["kind"] == kind]
            if edges:
                nx.draw_networkx_edges(graph, positions, edgelist=edges, ax=ax, edge_color="gray", **style)

        markers = {"bs": ("^", 120), "user": ("o", 40), "ris": ("s", 90)}
        for kind, (marker, size) in markers.items():
            nodes = [n for n, data in graph.nodes(data=True) if data["kind"] == kind]
            if not nodes:
                continue
            colors = [self.colors[graph.nodes[n]["vsp"] % len(self.colors)] for n in nodes]
            nx.draw_networkx_nodes(graph, positions, nodelist=nodes, node_shape=marker, node_size=size,
                                   node_color=colors, ax=ax, label=kind.upper())

        ax.set_aspect("equal")
        ax.autoscale()
        ax.set_xlabel("x (m)", fontsize=self.fontsize)
        ax.set_ylabel("y (m)", fontsize=self.fontsize)
        ax.set_title("Deployment", fontsize=self.fontsize + 1)
        ax.legend(fontsize=self.fontsize - 2, loc="upper right")
        get_logger().debug(f"Geometry graph with {graph.number_of_nodes()} nodes", LogCategory.VISUALIZATION)
        return self._save(fig, output)
