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
Eğitim Döngüsü
==============

Isınma (düzgün rastgele ham aksiyonlar) ve ardından T adımlık etkileşim /
güncelleme döngüsü. Her ana döngü adımı için bir MetricsRecord üretilir.
"""

import time
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Union

import numpy as np

from ..core.scenario import Scenario
from ..exceptions import InvalidConfig
from ..simulation.environment import SpectrumSharingEnv
from ..utils.logger import LogCategory, get_logger
from .checkpoint import load_checkpoint, save_checkpoint
from .common import AGENT_KINDS, AgentHyperparameters, RunningRewardScale
from .ddpg import DdpgAgent
from .replay import ReplayBuffer
from .sac import SacAgent


DEFAULT_SMOOTHING_WINDOW = 500


@dataclass
class MetricsRecord:
    """Adım başına metrik kaydı"""
    step: int
    episode: int
    reward_raw: float
    reward_smoothed: float
    sum_utility: float
    utility: List[float]
    qos_penalty: float
    sum_rate: float
    critic_loss: Optional[float] = None
    actor_loss: Optional[float] = None
    alpha: Optional[float] = None
    wall_ms: float = 0.0

    def to_row(self, include_wall_clock: bool = False) -> Dict[str, Any]:
        """CSV satırı; kayan noktalar repr ile tam hassasiyette"""
        def fmt(value):
            return "" if value is None else repr(float(value))

        row = {
            "step": self.step,
            "episode": self.episode,
            "reward_raw": fmt(self.reward_raw),
            "reward_smoothed": fmt(self.reward_smoothed),
            "sum_utility": fmt(self.sum_utility),
        }
        for v, value in enumerate(self.utility):
            row[f"utility_vsp{v}"] = fmt(value)
        row.update({
            "qos_penalty": fmt(self.qos_penalty),
            "sum_rate": fmt(self.sum_rate),
            "critic_loss": fmt(self.critic_loss),
            "actor_loss": fmt(self.actor_loss),
            "alpha": fmt(self.alpha),
        })
        if include_wall_clock:
            row["wall_ms"] = fmt(self.wall_ms)
        return row


def metrics_columns(num_vsps: int, include_wall_clock: bool = False) -> List[str]:
    """Metrik CSV kolon sırası"""
    columns = ["step", "episode", "reward_raw", "reward_smoothed", "sum_utility"]
    columns += [f"utility_vsp{v}" for v in range(num_vsps)]
    columns += ["qos_penalty", "sum_rate", "critic_loss", "actor_loss", "alpha"]
    if include_wall_clock:
        columns.append("wall_ms")
    return columns


def make_agent(agent_kind: str, state_dim: int, action_dim: int, hyperparameters: AgentHyperparameters,
               rng: np.random.Generator, total_steps: int, action_rng: np.random.Generator):
    """Ajan türüne göre öğrenici oluşturur"""
    if agent_kind == "ddpg":
        return DdpgAgent(state_dim, action_dim, hyperparameters, rng, total_steps, action_rng)
    if agent_kind == "sac":
        return SacAgent(state_dim, action_dim, hyperparameters, rng, total_steps, action_rng)
    raise InvalidConfig("agent", f"Bilinmeyen ajan türü: {agent_kind!r} (expected one of {AGENT_KINDS})")


def _select(agent, state: np.ndarray) -> np.ndarray:
    if agent.kind == "sac":
        action, _ = agent.select(state)
        return action
    return agent.select(state, explore=True)


def _update_round(agent, buffer: ReplayBuffer, scaler: RunningRewardScale, hp: AgentHyperparameters,
                  updates: int) -> Dict[str, Optional[float]]:
    result = {"critic_loss": None, "actor_loss": None}
    if len(buffer) < hp.batch_size:
        return result
    for _ in range(updates):
        batch = buffer.sample(hp.batch_size)
        if hp.normalize_rewards:
            batch["rewards"] = batch["rewards"] / scaler.scale
        if agent.kind == "ddpg":
            critic_loss, actor_loss = agent.update(batch)
            result["critic_loss"] = critic_loss
            result["actor_loss"] = actor_loss
        else:
            q_losses, policy_loss, _ = agent.update(batch)
            result["critic_loss"] = float(np.mean(q_losses))
            if policy_loss is not None:
                result["actor_loss"] = policy_loss
    return result


def train(agent_kind: str, scenario: Scenario, run_config, seed: int,
          checkpoint_dir: Optional[Union[str, Path]] = None,
          resume_from: Optional[Union[str, Path]] = None) -> Iterator[MetricsRecord]:
    """
    Tek tohumlu eğitim koşusu

    Args:
        agent_kind: 'ddpg' ya da 'sac'
        scenario: Senaryo
        run_config: total_steps, episode_length, hyperparameters, smoothing_window,
            checkpoint_every alanlarına sahip koşu konfigürasyonu
        seed: Koşu tohumu
        checkpoint_dir: Periyodik checkpoint dizini
        resume_from: Devam edilecek checkpoint dizini

    Yields:
        MetricsRecord: Her ana döngü adımı için bir kayıt
    """
    logger = get_logger()
    hp: AgentHyperparameters = run_config.hyperparameters
    total_steps = int(run_config.total_steps)
    window_size = int(getattr(run_config, "smoothing_window", DEFAULT_SMOOTHING_WINDOW))
    checkpoint_every = int(getattr(run_config, "checkpoint_every", 0) or 0)

    env_seed, init_seed, action_seed, buffer_seed, warmup_seed = np.random.SeedSequence(seed).spawn(5)
    env = SpectrumSharingEnv(scenario, episode_length=run_config.episode_length, seed=env_seed)
    agent = make_agent(agent_kind, env.state_dim, env.action_dim, hp, np.random.default_rng(init_seed),
                       total_steps, np.random.default_rng(action_seed))
    buffer = ReplayBuffer(env.state_dim, env.action_dim, hp.buffer_size, np.random.default_rng(buffer_seed))
    scaler = RunningRewardScale()
    updates = hp.updates_for(agent_kind)
    window = deque(maxlen=window_size)
    start_step = 0
    episode = 0

    if resume_from is not None:
        state = load_checkpoint(resume_from)
        if state["agent_kind"] != agent_kind:
            raise InvalidConfig("agent", f"checkpoint holds a {state['agent_kind']} agent")
        agent.load_state_dict(state["agent"])
        buffer.load_state_dict(state["buffer"])
        scaler.load_state_dict(state["reward_scale"])
        env.rng.bit_generator.state = state["env_rng"]
        start_step = int(state["progress"]["step"])
        episode = int(state["progress"]["episode"])
        window.extend(state["progress"]["window"])
        logger.info(f"Resuming {agent_kind} seed {seed} from step {start_step}", LogCategory.TRAINING)
    else:
        warmup_rng = np.random.default_rng(warmup_seed)
        state_vec = env.reset()
        for _ in range(hp.warmup_steps):
            action = warmup_rng.uniform(-1.0, 1.0, env.action_dim)
            next_state, reward, done, _ = env.step(action)
            buffer.add(state_vec, action, reward, next_state, done)
            scaler.update(reward)
            state_vec = env.reset() if done else next_state
        logger.debug(f"Warm-up stored {len(buffer)} transitions", LogCategory.TRAINING)

    logger.log_run_start(agent_kind, seed, total_steps)
    started = time.perf_counter()
    state_vec = env.reset()
    episode += 1
    smoothed = float("nan")

    for step in range(start_step + 1, total_steps + 1):
        step_start = time.perf_counter()
        agent.anneal(step - 1)
        action = _select(agent, state_vec)
        next_state, reward, done, info = env.step(action)
        buffer.add(state_vec, action, reward, next_state, done)
        scaler.update(reward)
        losses = _update_round(agent, buffer, scaler, hp, updates)

        window.append(reward)
        smoothed = float(np.mean(window))
        yield MetricsRecord(
            step=step,
            episode=episode,
            reward_raw=reward,
            reward_smoothed=smoothed,
            sum_utility=info.sum_utility,
            utility=[float(u) for u in info.utility],
            qos_penalty=info.qos_penalty,
            sum_rate=info.sum_rate,
            critic_loss=losses["critic_loss"],
            actor_loss=losses["actor_loss"],
            alpha=agent.alpha if agent_kind == "sac" else None,
            wall_ms=(time.perf_counter() - step_start) * 1000.0,
        )

        # Checkpoint ortam sıfırlanmadan önce yazılır
        if checkpoint_dir is not None and checkpoint_every and step % checkpoint_every == 0:
            save_checkpoint(checkpoint_dir, agent, buffer, scaler, env.rng,
                            {"step": step, "episode": episode, "window": list(window)})

        if done:
            state_vec = env.reset()
            episode += 1
        else:
            state_vec = next_state

    logger.log_run_end(agent_kind, seed, time.perf_counter() - started, smoothed)
