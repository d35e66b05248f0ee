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
Birim Dönüşümleri
=================

dB / dBm ile doğrusal güç arasında dönüşümler (fiziksel birim modu için).
"""

import numpy as np


def db_to_linear(value_db):
    """dB değerini doğrusal orana çevirir"""
    return np.power(10.0, np.asarray(value_db, dtype=float) / 10.0)


def linear_to_db(value):
    """Doğrusal oranı dB'ye çevirir"""
    return 10.0 * np.log10(np.asarray(value, dtype=float))


def dbm_to_watts(value_dbm):
    """dBm değerini Watt'a çevirir"""
    return db_to_linear(value_dbm) * 1e-3


def watts_to_dbm(value_watts):
    """Watt değerini dBm'e çevirir"""
    return linear_to_db(np.asarray(value_watts, dtype=float) * 1e3)


def noise_power_watts(noise_dbm_per_hz: float, bandwidth_hz: float) -> float:
    """Bir alt kanaldaki gürültü gücü B_c N_0 (Watt)"""
    return float(dbm_to_watts(noise_dbm_per_hz) * bandwidth_hz)
