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
Ajan Ortak Bileşenleri
======================

Hiperparametreler, koşan ödül ölçeği ve yumuşak Bellman hedefleri.
"""

from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import InvalidConfig


AGENT_KINDS = ("ddpg", "sac")


@dataclass
class AgentHyperparameters:
    """Öğrenici hiperparametreleri (varsayılanlar tablo değerleri)"""
    gamma: float = 0.99
    tau: float = 5e-3
    batch_size: int = 256
    buffer_size: int = 200_000
    actor_lr: float = 1e-4
    critic_lr: float = 1e-4
    alpha_lr: float = 1e-4
    hidden: Tuple[int, ...] = (256, 256)
    updates_per_step: Optional[int] = None
    policy_delay: int = 2
    warmup_steps: int = 1000
    init_alpha: float = 0.2
    auto_entropy: bool = True
    twin_critics: bool = True
    normalize_rewards: bool = True
    mask_terminal: bool = False
    noise_start: float = 0.3
    noise_end: float = 0.05

    def __post_init__(self):
        self.hidden = tuple(int(h) for h in self.hidden)
        self.validate()

    def validate(self):
        """Değer aralıklarını denetler"""
        checks = [
            ("gamma", 0.0 <= self.gamma <= 1.0, "must lie in [0, 1]"),
            ("tau", 0.0 < self.tau <= 1.0, "must lie in (0, 1]"),
            ("batch_size", self.batch_size >= 1, "must be >= 1"),
            ("buffer_size", self.buffer_size >= self.batch_size, "must be >= batch_size"),
            ("actor_lr", self.actor_lr > 0.0, "must be > 0"),
            ("critic_lr", self.critic_lr > 0.0, "must be > 0"),
            ("alpha_lr", self.alpha_lr > 0.0, "must be > 0"),
            ("hidden", len(self.hidden) >= 1 and min(self.hidden) >= 1, "needs positive layer widths"),
            ("updates_per_step", self.updates_per_step is None or self.updates_per_step >= 1,
             "must be >= 1"),
            ("policy_delay", self.policy_delay >= 1, "must be >= 1"),
            ("warmup_steps", self.warmup_steps >= 0, "must be >= 0"),
            ("init_alpha", self.init_alpha >= 0.0, "must be >= 0"),
            ("noise_start", self.noise_start >= 0.0, "must be >= 0"),
            ("noise_end", self.noise_end >= 0.0, "must be >= 0"),
        ]
        for name, ok, reason in checks:
            if not ok:
                raise InvalidConfig(f"hyperparameters.{name}", f"{reason}, got {getattr(self, name)!r}")
        if self.auto_entropy and self.init_alpha <= 0.0:
            raise InvalidConfig("hyperparameters.init_alpha", "must be > 0 with auto_entropy")

    def updates_for(self, agent_kind: str) -> int:
        """Ortam adımı başına gradyan güncellemesi (DDPG 1, SAC 2)"""
        if self.updates_per_step is not None:
            return self.updates_per_step
        return 2 if agent_kind == "sac" else 1

    @classmethod
    def from_config(cls, config_data: Optional[Dict[str, Any]]) -> "AgentHyperparameters":
        """Konfigürasyon sözlüğünden oluşturur; 'lr' hem aktör hem kritik için"""
        config_data = dict(config_data or {})
        if "lr" in config_data:
            lr = config_data.pop("lr")
            config_data.setdefault("actor_lr", lr)
            config_data.setdefault("critic_lr", lr)
        known = {f.name for f in fields(cls)}
        for key in config_data:
            if key not in known:
                raise InvalidConfig(f"hyperparameters.{key}", "unknown key")
        try:
            return cls(**config_data)
        except TypeError as e:
            raise InvalidConfig("hyperparameters", str(e))

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["hidden"] = list(self.hidden)
        return data


class RunningRewardScale:
    """Koşan RMS ödül ölçeği; ölçek en az 1e-8"""

    def __init__(self, eps: float = 1e-8):
        self.eps = eps
        self.count = 0
        self.mean_square = 0.0

    def update(self, reward: float):
        self.count += 1
        self.mean_square += (reward * reward - self.mean_square) / self.count

    @property
    def scale(self) -> float:
        if self.count == 0:
            return 1.0
        return max(float(np.sqrt(self.mean_square)), self.eps)

    def state_dict(self) -> Dict[str, Any]:
        return {"count": self.count, "mean_square": self.mean_square}

    def load_state_dict(self, state: Dict[str, Any]):
        self.count = int(state["count"])
        self.mean_square = float(state["mean_square"])


def soft_bellman_targets(rewards: np.ndarray, dones: np.ndarray, next_q: Sequence[np.ndarray],
                         next_log_prob: Optional[np.ndarray], alpha: float, gamma: float,
                         mask_terminal: bool = False) -> np.ndarray:
    """
    y = r + γ·(min_i Q'_i(s', a') - α·log π(a'|s'))

    Tek kritik ve α = 0 ile DDPG hedefine indirgenir. mask_terminal False iken
    zaman sınırlı bölüm sonlarında da bootstrap yapılır.
    """
    q_min = np.min(np.stack([np.ravel(q) for q in next_q]), axis=0)
    soft_value = q_min
    if next_log_prob is not None and alpha != 0.0:
        soft_value = q_min - alpha * np.ravel(next_log_prob)
    continuation = 1.0 - np.ravel(dones) if mask_terminal else np.ones_like(q_min)
    return np.ravel(rewards) + gamma * continuation * soft_value


def mse_head(targets: np.ndarray):
    """Ortalama kare hata kayıp başlığı"""
    targets = np.ravel(targets)

    def head(output: np.ndarray):
        residual = output[:, 0] - targets
        loss = float(np.mean(residual ** 2))
        grad = (2.0 / residual.size) * residual
        return loss, grad[:, None]

    return head
