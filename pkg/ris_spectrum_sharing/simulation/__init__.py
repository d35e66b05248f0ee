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
Fiziksel katman değerlendirmesi ve öğrenme ortamı
"""

from .phy import (Allocation, UtilityBreakdown, link_gains, interference, sinr_and_rate, utility_breakdown,
                  evaluate_rewards, check_allocation)
from .environment import SpectrumSharingEnv, project_action, encode_action, decode_action, state_dim

__all__ = [
    "Allocation",
    "UtilityBreakdown",
    "link_gains",
    "interference",
    "sinr_and_rate",
    "utility_breakdown",
    "evaluate_rewards",
    "check_allocation",
    "SpectrumSharingEnv",
    "project_action",
    "encode_action",
    "decode_action",
    "state_dim"
]
