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
Konfigürasyon Modülü
====================

Koşu ve senaryo konfigürasyonları: JSON dosyaları, paketli ön ayarlar
(`preset:<ad>`), noktalı `anahtar=değer` geçersiz kılmaları ve RunConfig.
"""

import copy
import errno
import json
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .core.scenario import DEFAULT_SCENARIO_CONFIG, Scenario, build_scenario, resolve_scenario_config
from .exceptions import InvalidConfig
from .learning.common import AGENT_KINDS, AgentHyperparameters


PRESET_DIR = Path(__file__).parent / "presets"
PRESET_PREFIX = "preset:"

RUN_AGENT_KINDS = AGENT_KINDS + ("none",)

DEFAULT_BENCHMARK_CONFIG: Dict[str, Any] = {
    "max_iterations": 30,
    "tolerance": 1e-6,
}


def list_presets() -> List[str]:
    """Paketli ön ayar adları"""
    return sorted(path.stem for path in PRESET_DIR.glob("*.json"))


def _read_json(path: Path) -> Dict[str, Any]:
    try:
        with open(path) as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidConfig("<file>", f"malformed JSON ({e.msg} at line {e.lineno})", str(path))
    if not isinstance(data, dict):
        raise InvalidConfig("<file>", "top level must be a JSON object", str(path))
    return data


def load_preset(name: str) -> Dict[str, Any]:
    """
    Ön ayarı adıyla yükler

    Raises:
        InvalidConfig: Ön ayar yoksa
    """
    path = PRESET_DIR / f"{name}.json"
    if not path.exists():
        raise InvalidConfig("preset", f"Bilinmeyen preset: {name!r} (available: {', '.join(list_presets())})")
    return _read_json(path)


def load_config_file(reference: Union[str, Path]) -> Tuple[Dict[str, Any], str]:
    """
    Dosya yolu ya da `preset:<ad>` referansını okur

    Returns:
        tuple: (konfigürasyon sözlüğü, kaynak adı)
    """
    reference = str(reference)
    if reference.startswith(PRESET_PREFIX):
        name = reference[len(PRESET_PREFIX):]
        return load_preset(name), reference
    path = Path(reference)
    if not path.exists():
        raise FileNotFoundError(errno.ENOENT, "config file not found", str(path))
    return _read_json(path), str(path)


def parse_override(text: str) -> Tuple[List[str], Any]:
    """
    `a.b.c=değer` biçimini ayrıştırır; değer JSON olarak, olmazsa metin olarak okunur

    Raises:
        InvalidConfig: '=' yoksa ya da anahtar boşsa
    """
    if "=" not in text:
        raise InvalidConfig("--override", f"expected key=value, got {text!r}")
    key, raw = text.split("=", 1)
    keys = key.strip().split(".")
    if not keys or any(not part for part in keys):
        raise InvalidConfig("--override", f"empty key segment in {text!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return keys, value


def _set_nested(target: Dict[str, Any], keys: Sequence[str], value: Any):
    node = target
    for key in keys[:-1]:
        child = node.get(key)
        if not isinstance(child, dict):
            child = {}
            node[key] = child
        node = child
    node[keys[-1]] = value


def _is_plain_scenario(data: Dict[str, Any]) -> bool:
    return bool(data) and all(key in DEFAULT_SCENARIO_CONFIG for key in data)


@dataclass
class RunConfig:
    """Koşu konfigürasyonu"""
    scenario: Dict[str, Any] = field(default_factory=dict)
    agent: str = "sac"
    total_steps: int = 20_000
    episode_length: int = 100
    seeds: List[int] = field(default_factory=lambda: [1, 2, 3])
    hyperparameters: AgentHyperparameters = field(default_factory=AgentHyperparameters)
    output_dir: str = "runs"
    jobs: int = 1
    smoothing_window: int = 500
    checkpoint_every: int = 0
    log_wall_clock: bool = False
    benchmark: Dict[str, Any] = field(default_factory=lambda: dict(DEFAULT_BENCHMARK_CONFIG))
    description: str = ""
    source: Optional[str] = None

    def __post_init__(self):
        self.validate()

    def validate(self):
        """Alan aralıklarını denetler"""
        if self.agent not in RUN_AGENT_KINDS:
            raise InvalidConfig("agent", f"must be one of {RUN_AGENT_KINDS}, got {self.agent!r}", self.source)
        if not isinstance(self.total_steps, int) or self.total_steps <= 0:
            raise InvalidConfig("total_steps", f"must be a positive integer, got {self.total_steps!r}",
                                self.source)
        if not isinstance(self.episode_length, int) or self.episode_length < 1:
            raise InvalidConfig("episode_length", f"must be >= 1, got {self.episode_length!r}", self.source)
        if not self.seeds or not all(isinstance(s, int) and s >= 0 for s in self.seeds):
            raise InvalidConfig("seeds", f"must be a non-empty list of non-negative integers, got {self.seeds!r}",
                                self.source)
        if not isinstance(self.jobs, int) or self.jobs < 1:
            raise InvalidConfig("jobs", f"must be >= 1, got {self.jobs!r}", self.source)
        if not isinstance(self.smoothing_window, int) or self.smoothing_window < 1:
            raise InvalidConfig("smoothing_window", f"must be >= 1, got {self.smoothing_window!r}", self.source)
        if not isinstance(self.checkpoint_every, int) or self.checkpoint_every < 0:
            raise InvalidConfig("checkpoint_every", f"must be >= 0, got {self.checkpoint_every!r}", self.source)
        unknown = set(self.benchmark) - set(DEFAULT_BENCHMARK_CONFIG)
        if unknown:
            raise InvalidConfig(f"benchmark.{sorted(unknown)[0]}", "unknown key", self.source)

    @classmethod
    def from_config(cls, config_data: Dict[str, Any], source: Optional[str] = None,
                    base_dir: Optional[Path] = None) -> "RunConfig":
        """
        Sözlükten RunConfig oluşturur

        Senaryo `scenario` (sözlük), `scenario_preset` (ad) ya da `scenario_file`
        (yol) ile verilir. Yalnızca senaryo anahtarları içeren sözlük düz senaryo
        olarak kabul edilir.
        """
        data = copy.deepcopy(config_data)
        if _is_plain_scenario(data):
            data = {"scenario": data}

        scenario = data.pop("scenario", None)
        preset = data.pop("scenario_preset", None)
        scenario_file = data.pop("scenario_file", None)
        if sum(x is not None for x in (scenario, preset, scenario_file)) > 1:
            raise InvalidConfig("scenario", "give only one of scenario, scenario_preset, scenario_file", source)
        if preset is not None:
            scenario = load_preset(preset).get("scenario", {})
        elif scenario_file is not None:
            path = Path(scenario_file)
            if not path.is_absolute() and base_dir is not None:
                path = base_dir / path
            loaded, _ = load_config_file(path)
            scenario = loaded.get("scenario", loaded)
        scenario = scenario or {}
        if not isinstance(scenario, dict):
            raise InvalidConfig("scenario", "must be a mapping", source)

        known = {f.name for f in fields(cls)} - {"source", "scenario"}
        for key in data:
            if key not in known:
                raise InvalidConfig(key, "unknown key", source)

        try:
            resolved = resolve_scenario_config(scenario)
            hyper = AgentHyperparameters.from_config(data.pop("hyperparameters", None))
            benchmark = dict(DEFAULT_BENCHMARK_CONFIG)
            benchmark.update(data.pop("benchmark", None) or {})
            return cls(scenario=resolved, hyperparameters=hyper, benchmark=benchmark, source=source, **data)
        except InvalidConfig as e:
            if e.source is None and source is not None:
                raise e.with_source(source)
            raise
        except TypeError as e:
            raise InvalidConfig("<run>", str(e), source)

    def build_scenario(self) -> Scenario:
        try:
            return build_scenario(self.scenario)
        except InvalidConfig as e:
            if e.source is None and self.source is not None:
                raise e.with_source(self.source)
            raise

    def with_updates(self, **changes) -> "RunConfig":
        """Değiştirilmiş kopya"""
        data = {f.name: copy.deepcopy(getattr(self, f.name)) for f in fields(self)}
        data.update(changes)
        return RunConfig(**data)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "description": self.description,
            "scenario": self.scenario,
            "agent": self.agent,
            "total_steps": self.total_steps,
            "episode_length": self.episode_length,
            "seeds": list(self.seeds),
            "hyperparameters": self.hyperparameters.to_dict(),
            "output_dir": self.output_dir,
            "jobs": self.jobs,
            "smoothing_window": self.smoothing_window,
            "checkpoint_every": self.checkpoint_every,
            "log_wall_clock": self.log_wall_clock,
            "benchmark": dict(self.benchmark),
        }


RUN_FIELDS = {f.name for f in fields(RunConfig)} | {"scenario_preset", "scenario_file"}


def apply_overrides(config_data: Dict[str, Any], overrides: Sequence[str]) -> Dict[str, Any]:
    """
    Noktalı geçersiz kılmaları uygular

    İlk parça bir RunConfig alanıysa koşuya, değilse senaryoya yazılır.
    """
    data = copy.deepcopy(config_data)
    if _is_plain_scenario(data):
        data = {"scenario": data}
    for text in overrides or ():
        keys, value = parse_override(text)
        if keys[0] in RUN_FIELDS:
            _set_nested(data, keys, value)
        else:
            if "scenario" not in data:
                if "scenario_preset" in data:
                    data["scenario"] = load_preset(data.pop("scenario_preset")).get("scenario", {})
                else:
                    data["scenario"] = {}
            _set_nested(data["scenario"], keys, value)
    return data


def load_run_config(reference: Optional[Union[str, Path]] = None, overrides: Sequence[str] = (),
                    seeds: Optional[Sequence[int]] = None, output_dir: Optional[str] = None,
                    jobs: Optional[int] = None) -> RunConfig:
    """
    Dosya/ön ayar + geçersiz kılmalar + CLI bayraklarından RunConfig

    Args:
        reference: Dosya yolu ya da `preset:<ad>` (None: varsayılan ön ayar)
        overrides: `anahtar=değer` listesi
        seeds: --seeds
        output_dir: --out
        jobs: --jobs
    """
    data, source = load_config_file(reference or f"{PRESET_PREFIX}default")
    base_dir = None if source.startswith(PRESET_PREFIX) else Path(source).parent
    try:
        data = apply_overrides(data, overrides)
    except InvalidConfig as e:
        raise e.with_source(source) if e.source is None else e
    if seeds is not None:
        data["seeds"] = list(seeds)
    if output_dir is not None:
        data["output_dir"] = str(output_dir)
    if jobs is not None:
        data["jobs"] = int(jobs)
    return RunConfig.from_config(data, source=source, base_dir=base_dir)
