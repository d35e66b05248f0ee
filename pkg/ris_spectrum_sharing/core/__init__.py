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
Senaryo, topoloji ve kanal modelleri
"""

from .units import db_to_linear, linear_to_db, dbm_to_watts, watts_to_dbm, noise_power_watts
from .scenario import (PriceBook, Scenario, RisAssociation, resolve_scenario_config, build_scenario,
                       fix_ris_association, topology_graph, association_summary)
from .channel import (ChannelRealization, RisPhases, draw_channels, effective_gains, effective_channel,
                      align_phases_oracle, dump_realization, load_realization)

__all__ = [
    "db_to_linear",
    "linear_to_db",
    "dbm_to_watts",
    "watts_to_dbm",
    "noise_power_watts",
    "PriceBook",
    "Scenario",
    "RisAssociation",
    "resolve_scenario_config",
    "build_scenario",
    "fix_ris_association",
    "topology_graph",
    "association_summary",
    "ChannelRealization",
    "RisPhases",
    "draw_channels",
    "effective_gains",
    "effective_channel",
    "align_phases_oracle",
    "dump_realization",
    "load_realization"
]
