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
Sinir ağları ve DRL öğrenicileri
"""

from .network import MLP, Adam, GaussianPolicy, save_network, load_network
from .common import AGENT_KINDS, AgentHyperparameters, RunningRewardScale
from .replay import ReplayBuffer
from .ddpg import DdpgAgent
from .sac import SacAgent
from .checkpoint import save_checkpoint, load_checkpoint
from .trainer import MetricsRecord, make_agent, train

__all__ = [
    "MLP",
    "Adam",
    "GaussianPolicy",
    "save_network",
    "load_network",
    "AGENT_KINDS",
    "AgentHyperparameters",
    "RunningRewardScale",
    "ReplayBuffer",
    "DdpgAgent",
    "SacAgent",
    "save_checkpoint",
    "load_checkpoint",
    "MetricsRecord",
    "make_agent",
    "train"
]
