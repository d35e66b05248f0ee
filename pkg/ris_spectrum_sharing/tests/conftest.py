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
conftest.py - Configuration file for pytest
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to Python path
project_root = str(Path(__file__).parent.parent.parent)
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from ris_spectrum_sharing.core.channel import draw_channels
from ris_spectrum_sharing.core.scenario import build_scenario, fix_ris_association


SMALL_SCENARIO = {
    "vsps": 2,
    "bs_per_vsp": 1,
    "users_per_vsp": 2,
    "subchannels": 2,
    "reusable": [0],
    "dedicated": [1],
    "l_c": 2,
    "ris": {"count": 1, "elements": 4, "owner": [0]},
    "seed": 3,
}


@pytest.fixture
def small_config():
    """Two VSPs, one BS each, two users each, two subchannels, one 4-element RIS"""
    return {key: (dict(value) if isinstance(value, dict) else value) for key, value in SMALL_SCENARIO.items()}


@pytest.fixture
def small_scenario(small_config):
    return build_scenario(small_config)


@pytest.fixture
def small_assoc(small_scenario):
    return fix_ris_association(small_scenario)


@pytest.fixture
def small_realization(small_scenario):
    return draw_channels(small_scenario, np.random.default_rng(7))


@pytest.fixture
def tiny_hyperparameters():
    """Small networks and short warm-up for fast learner tests"""
    return {"hidden": [16, 16], "batch_size": 8, "buffer_size": 256, "warmup_steps": 16}
