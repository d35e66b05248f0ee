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
Metrik Dosyaları
================

Tohum başına metrik CSV'lerinin yazımı, okunması ve tohumlar arası toplama.
CSV'ler csv.DictWriter ile yazılır, pandas ile okunur; kayan noktalar repr ile
yazıldığı için aynı (konfigürasyon, tohum) aynı baytları üretir.
"""

import csv
import json
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..exceptions import EmptyInput, SchemaMismatch
from ..learning.trainer import MetricsRecord, metrics_columns


REQUIRED_COLUMNS = ("step", "reward_raw", "reward_smoothed")
AGGREGATE_COLUMNS = ("step", "reward_raw_median", "reward_raw_mean",
                     "reward_smoothed_median", "reward_smoothed_mean", "runs")


def write_metrics_csv(path: Union[str, Path], records: Iterable[MetricsRecord], num_vsps: int,
                      include_wall_clock: bool = False, append: bool = False) -> Dict[str, Any]:
    """
    Metrik akışını CSV'ye yazar

    append=True iken başlık yazılmaz ve satırlar mevcut dosyanın sonuna eklenir.

    Returns:
        dict: path, rows, final_smoothed
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = 0
    final = None
    with open(path, "a" if append else "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=metrics_columns(num_vsps, include_wall_clock),
                                lineterminator="\n")
        if not append:
            writer.writeheader()
        for record in records:
            writer.writerow(record.to_row(include_wall_clock))
            rows += 1
            final = record.reward_smoothed
    return {"path": str(path), "rows": rows, "final_smoothed": final}


def truncate_metrics(path: Union[str, Path], last_step: int) -> int:
    """
    Checkpoint adımından sonraki satırları atar; kalan satırlar bayt olarak korunur

    Returns:
        int: Kalan veri satırı sayısı
    """
    path = Path(path)
    with open(path, newline="") as f:
        lines = f.readlines()
    kept = lines[:1] + [line for line in lines[1:] if int(line.split(",", 1)[0]) <= last_step]
    with open(path, "w", newline="") as f:
        f.writelines(kept)
    return len(kept) - 1


def read_metrics(path: Union[str, Path], required: Sequence[str] = REQUIRED_COLUMNS) -> pd.DataFrame:
    """
    Metrik CSV'sini okur

    Raises:
        SchemaMismatch: Gerekli kolonlar yoksa
        EmptyInput: Dosyada satır yoksa
    """
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except pd.errors.EmptyDataError:
        raise EmptyInput(f"{path}: file is empty")
    missing = [column for column in required if column not in frame.columns]
    if missing:
        raise SchemaMismatch(str(path), missing)
    if frame.empty:
        raise EmptyInput(f"{path}: no metrics rows")
    return frame


def trailing_mean(values: Sequence[float], window: int) -> np.ndarray:
    """(t - W, t] penceresinde ortalama"""
    return pd.Series(np.asarray(values, dtype=float)).rolling(window, min_periods=1).mean().to_numpy()


def final_smoothed(path: Union[str, Path]) -> float:
    """Son satırın yumuşatılmış ödülü"""
    return float(read_metrics(path)["reward_smoothed"].iloc[-1])


def _fmt(value: float) -> str:
    return repr(float(value))


def aggregate_runs(paths: Sequence[Union[str, Path]], output: Union[str, Path]) -> Path:
    """
    Tohum CSV'lerini adım bazında toplar (medyan ve ortalama)

    Toplama dosyası yalnızca tohum dosyalarının fonksiyonudur.
    """
    if not paths:
        raise EmptyInput("no metrics files to aggregate")
    frames = [read_metrics(p).set_index("step") for p in paths]
    steps = frames[0].index
    for frame in frames[1:]:
        steps = steps.intersection(frame.index)
    raw = np.stack([frame.loc[steps, "reward_raw"].to_numpy(dtype=float) for frame in frames])
    smoothed = np.stack([frame.loc[steps, "reward_smoothed"].to_numpy(dtype=float) for frame in frames])

    output = Path(output)
    output.parent.mkdir(parents=True, exist_ok=True)
    with open(output, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=list(AGGREGATE_COLUMNS), lineterminator="\n")
        writer.writeheader()
        for i, step in enumerate(steps):
            writer.writerow({
                "step": int(step),
                "reward_raw_median": _fmt(np.median(raw[:, i])),
                "reward_raw_mean": _fmt(np.mean(raw[:, i])),
                "reward_smoothed_median": _fmt(np.median(smoothed[:, i])),
                "reward_smoothed_mean": _fmt(np.mean(smoothed[:, i])),
                "runs": len(frames),
            })
    return output


def write_json(path: Union[str, Path], data: Dict[str, Any]) -> Path:
    """Sıralı anahtarlarla JSON yazar"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def read_json(path: Union[str, Path]) -> Dict[str, Any]:
    with open(path) as f:
        return json.load(f)


def benchmark_mean(path: Optional[Union[str, Path]]) -> Optional[float]:
    """Benchmark kayıt dosyasındaki ortalama ödül"""
    if path is None:
        return None
    return float(read_json(path)["mean_reward"])
