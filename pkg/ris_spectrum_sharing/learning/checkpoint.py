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
Checkpoint Modülü
=================

Eğitim durumunu (ağ blobları, optimizer momentleri, replay buffer, ödül
ölçeği, rastgele kaynak durumları) diske yazar ve geri okur.
"""

import pickle
from pathlib import Path
from typing import Any, Dict, Union

from ..utils.logger import LogCategory, get_logger
from .network import save_network


CHECKPOINT_STATE = "state.pkl"
CHECKPOINT_VERSION = 1


def _agent_networks(agent) -> Dict[str, Any]:
    if agent.kind == "ddpg":
        return {"actor": agent.actor, "critic": agent.critic}
    networks = {"policy": agent.policy.net}
    for i, critic in enumerate(agent.critics):
        networks[f"critic{i + 1}"] = critic
    return networks


def save_checkpoint(directory: Union[str, Path], agent, buffer, reward_scale, env_rng,
                    progress: Dict[str, Any]) -> Path:
    """
    Checkpoint yazar

    Args:
        directory: Hedef dizin
        agent: DdpgAgent ya da SacAgent
        buffer: ReplayBuffer
        reward_scale: RunningRewardScale
        env_rng: Ortamın rastgele kaynağı
        progress: Adım, bölüm ve yumuşatma penceresi gibi döngü durumu

    Returns:
        Path: Checkpoint dizini
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    step = int(progress.get("step", 0))
    for name, net in _agent_networks(agent).items():
        save_network(net, directory / f"{name}.bin", step=step)

    state = {
        "version": CHECKPOINT_VERSION,
        "agent_kind": agent.kind,
        "agent": agent.state_dict(),
        "buffer": buffer.state_dict(),
        "reward_scale": reward_scale.state_dict(),
        "env_rng": env_rng.bit_generator.state,
        "progress": dict(progress),
    }
    with open(directory / CHECKPOINT_STATE, "wb") as f:
        pickle.dump(state, f)
    get_logger().log_artifact("checkpoint", str(directory))
    return directory


def load_checkpoint(directory: Union[str, Path]) -> Dict[str, Any]:
    """Checkpoint durumunu okur"""
    path = Path(directory) / CHECKPOINT_STATE
    if not path.exists():
        raise FileNotFoundError(f"checkpoint state not found: {path}")
    with open(path, "rb") as f:
        state = pickle.load(f)
    if state.get("version") != CHECKPOINT_VERSION:
        raise ValueError(f"{path}: unsupported checkpoint version {state.get('version')}")
    get_logger().debug(f"Checkpoint loaded from {directory} at step {state['progress'].get('step')}",
                       LogCategory.TRAINING)
    return state
