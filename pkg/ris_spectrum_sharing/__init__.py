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

__version__ = '0.1.0'

# Core modülünden sınıfları içe aktar
from .core.scenario import Scenario, RisAssociation, build_scenario, fix_ris_association, topology_graph
from .core.channel import ChannelRealization, RisPhases, draw_channels, effective_gains

# Simulation modülünden sınıfları içe aktar
from .simulation.phy import Allocation, UtilityBreakdown, utility_breakdown, check_allocation
from .simulation.environment import SpectrumSharingEnv, project_action

# Learning modülünden sınıfları içe aktar
from .learning.common import AgentHyperparameters
from .learning.ddpg import DdpgAgent
from .learning.sac import SacAgent
from .learning.trainer import MetricsRecord, train

# Optimization modülünden sınıfları içe aktar
from .optimization.eds import eds_solve, brute_force_oracle
from .optimization.sca import sca_refine

from .config import RunConfig, load_run_config

# Public API'yi tanımla
__all__ = [
    # Core modülü
    'Scenario', 'RisAssociation', 'build_scenario', 'fix_ris_association', 'topology_graph',
    'ChannelRealization', 'RisPhases', 'draw_channels', 'effective_gains',

    # Simulation modülü
    'Allocation', 'UtilityBreakdown', 'utility_breakdown', 'check_allocation',
    'SpectrumSharingEnv', 'project_action',

    # Learning modülü
    'AgentHyperparameters', 'DdpgAgent', 'SacAgent', 'MetricsRecord', 'train',

    # Optimization modülü
    'eds_solve', 'brute_force_oracle', 'sca_refine',

    # Konfigürasyon
    'RunConfig', 'load_run_config',
]
