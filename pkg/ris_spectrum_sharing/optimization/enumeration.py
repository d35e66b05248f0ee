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
Ayrık Konfigürasyon Sayımı
==========================

(ω, φ) uzayının kapsamlı sayımı. Her kullanıcı ya boşta kalır ya da kendi
VSP'sinin bir (b, c) çiftine atanır; (v, b, c) başına en fazla L_c kullanıcı.
Konfigürasyonlar karışık tabanlı doğrusal indeksle sıralanır (son VSP en hızlı,
boşta seçeneği ilk).
"""

import itertools
from typing import Iterator, List, Tuple

import numpy as np

from ..core.scenario import Scenario
from ..exceptions import SearchSpaceTooLarge


MAX_CANDIDATES = 2 ** 22


def candidate_count(scenario: Scenario) -> int:
    """Filtrelenmemiş aday sayısı (B·C + 1)^(V·K)"""
    return (scenario.bs_per_vsp * scenario.num_subchannels + 1) ** scenario.num_users_total


def check_search_space(scenario: Scenario, limit: int = MAX_CANDIDATES) -> int:
    """
    Arama uzayı korumasını uygular

    Raises:
        SearchSpaceTooLarge: Aday sayısı limiti aşarsa
    """
    count = candidate_count(scenario)
    if count > limit:
        raise SearchSpaceTooLarge(count, limit)
    return count


def vsp_choice_lists(scenario: Scenario) -> List[np.ndarray]:
    """
    VSP başına geçerli seçim listeleri

    Seçim 0 boşta, 1 + b·C + c ise (b, c) demektir.

    Returns:
        list: Her VSP için (n_v, K) tamsayı dizisi
    """
    check_search_space(scenario)
    options = scenario.bs_per_vsp * scenario.num_subchannels + 1
    valid = []
    for choice in itertools.product(range(options), repeat=scenario.users_per_vsp):
        occupied = [c for c in choice if c > 0]
        if occupied and max(occupied.count(c) for c in set(occupied)) > scenario.max_users_per_subchannel:
            continue
        valid.append(choice)
    table = np.array(valid, dtype=np.int64).reshape(len(valid), scenario.users_per_vsp)
    return [table] * scenario.num_vsps


def configuration_count(scenario: Scenario) -> int:
    return int(np.prod([len(table) for table in vsp_choice_lists(scenario)]))


def choices_to_omega(scenario: Scenario, choices: np.ndarray) -> np.ndarray:
    """
    Seçim dizisini ω'ya çevirir

    Args:
        choices: (N, V, K) seçim indeksleri

    Returns:
        np.ndarray: (N, V, B, K, C) int8
    """
    num_vsps, bs_per_vsp, users_per_vsp, num_subchannels = scenario.allocation_shape
    options = bs_per_vsp * num_subchannels + 1
    one_hot = np.zeros(choices.shape + (options,), dtype=np.int8)
    np.put_along_axis(one_hot, choices[..., None], 1, axis=-1)
    omega = one_hot[..., 1:].reshape(len(choices), num_vsps, users_per_vsp, bs_per_vsp, num_subchannels)
    return omega.transpose(0, 1, 3, 2, 4)


def configurations_in_range(scenario: Scenario, tables: List[np.ndarray], start: int, stop: int) -> np.ndarray:
    """[start, stop) doğrusal indeks aralığındaki ω toplu dizisi"""
    index = np.arange(start, stop)
    per_vsp = np.unravel_index(index, tuple(len(t) for t in tables))
    choices = np.stack([tables[v][per_vsp[v]] for v in range(len(tables))], axis=1)
    return choices_to_omega(scenario, choices)


def phi_from_omega(omega: np.ndarray) -> np.ndarray:
    return omega.any(axis=-1).astype(np.int8)


def enumerate_discrete(scenario: Scenario, chunk_size: int = 4096) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """
    Uygun (ω, φ) konfigürasyonlarını sırayla üretir

    Raises:
        SearchSpaceTooLarge: Aday sayısı 2^22'yi aşarsa
    """
    tables = vsp_choice_lists(scenario)
    total = int(np.prod([len(t) for t in tables]))
    for start in range(0, total, chunk_size):
        batch = configurations_in_range(scenario, tables, start, min(total, start + chunk_size))
        for omega in batch:
            yield omega, phi_from_omega(omega)
