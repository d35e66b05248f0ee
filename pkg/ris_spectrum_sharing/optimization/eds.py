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
EDS Kıyas Çözücüsü
==================

Aşama 1: her ayrık konfigürasyon eşit güç ve sabit (sıfır) RIS fazlarıyla
değerlendirilir, ödülü en yüksek olan seçilir. Aşama 2: kazanan konfigürasyonun
güçleri SCA ile iyileştirilir.

Küçük örnekler için ızgara tabanlı kaba kuvvet kahini de buradadır.
"""

import itertools
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..core.channel import ChannelRealization, RisPhases
from ..core.scenario import RisAssociation, Scenario, fix_ris_association
from ..exceptions import SearchSpaceTooLarge
from ..harness.parallel import ParallelRunner
from ..simulation.phy import Allocation, UtilityBreakdown, evaluate_rewards, link_gains, utility_from_gains
from ..utils.logger import LogCategory, get_logger
from .enumeration import configurations_in_range, vsp_choice_lists
from .sca import DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE, sca_refine


DEFAULT_CHUNK_SIZE = 8192
ORACLE_LIMIT = 10 ** 7


@dataclass
class BenchmarkRecord:
    """Kıyas sonucu kaydı"""
    config_id: int
    num_configurations: int
    stage1_reward: float
    stage2_reward: float
    power: List[float]
    iterations: int
    escalations: int
    qos_infeasible: bool

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def uniform_power(scenario: Scenario, omega: np.ndarray, budget: Optional[float] = None) -> np.ndarray:
    """Her BS bütçesini aktif bağlantılarına eşit böler; (..., V, B, K, C)"""
    budget = scenario.p_max if budget is None else budget
    counts = omega.sum(axis=(-2, -1), keepdims=True)
    return np.where(omega == 1, budget / np.maximum(counts, 1), 0.0)


def _evaluate_chunk(args) -> Tuple[int, float]:
    scenario, tables, gains, start, stop = args
    omega = configurations_in_range(scenario, tables, start, stop)
    rewards = evaluate_rewards(scenario, gains, omega, uniform_power(scenario, omega))
    best = int(np.argmax(rewards))
    return start + best, float(rewards[best])


def stage_one(scenario: Scenario, gains: np.ndarray, jobs: int = 1,
              chunk_size: int = DEFAULT_CHUNK_SIZE) -> Tuple[int, float, int]:
    """
    Eşit güçle kapsamlı değerlendirme

    Returns:
        tuple: (kazanan doğrusal indeks, ödülü, konfigürasyon sayısı)
    """
    tables = vsp_choice_lists(scenario)
    total = int(np.prod([len(t) for t in tables]))
    chunks = [(scenario, tables, gains, start, min(total, start + chunk_size))
              for start in range(0, total, chunk_size)]

    results = ParallelRunner(jobs, description="EDS chunks").map(_evaluate_chunk, chunks)

    # Eşitlikte düşük indeks
    best_index, best_reward = results[0]
    for index, reward in results[1:]:
        if reward > best_reward:
            best_index, best_reward = index, reward
    return best_index, best_reward, total


def eds_solve_detailed(scenario: Scenario, real: ChannelRealization, phases: Optional[RisPhases] = None,
                       assoc: Optional[RisAssociation] = None, jobs: int = 1,
                       max_iterations: int = DEFAULT_MAX_ITERATIONS, tolerance: float = DEFAULT_TOLERANCE,
                       chunk_size: int = DEFAULT_CHUNK_SIZE
                       ) -> Tuple[Allocation, UtilityBreakdown, BenchmarkRecord]:
    """
    EDS + SCA kıyası, kayıtla birlikte

    Args:
        scenario: Senaryo
        real: Kanal gerçekleşmesi
        phases: Sabit RIS fazları (None: sıfır)
        assoc: RIS ilişkilendirmesi (None: topolojiden)
        jobs: Aşama-1 için işlem sayısı

    Returns:
        tuple: (tahsis, döküm, kayıt)
    """
    phases = phases if phases is not None else RisPhases.zeros(scenario)
    assoc = assoc if assoc is not None else fix_ris_association(scenario)
    gains = link_gains(real, phases, assoc)

    config_id, stage1_reward, total = stage_one(scenario, gains, jobs, chunk_size)
    omega = configurations_in_range(scenario, vsp_choice_lists(scenario), config_id, config_id + 1)[0]

    result = sca_refine(scenario, gains, omega, phases, uniform_power(scenario, omega),
                        max_iterations=max_iterations, tolerance=tolerance)
    if result.objective >= stage1_reward:
        alloc = Allocation.from_schedule(omega, result.power, phases)
        breakdown = result.breakdown
    else:
        alloc = Allocation.from_schedule(omega, uniform_power(scenario, omega), phases)
        breakdown = utility_from_gains(scenario, gains, alloc)

    record = BenchmarkRecord(
        config_id=int(config_id),
        num_configurations=total,
        stage1_reward=float(stage1_reward),
        stage2_reward=float(breakdown.reward),
        power=alloc.power[alloc.omega == 1].tolist(),
        iterations=result.iterations,
        escalations=result.escalations,
        qos_infeasible=result.qos_infeasible,
    )
    get_logger().debug(f"EDS winner {config_id}/{total}: {stage1_reward:.6g} -> {breakdown.reward:.6g}",
                       LogCategory.BENCHMARK)
    return alloc, breakdown, record


def eds_solve(scenario: Scenario, real: ChannelRealization, phases: Optional[RisPhases] = None,
              assoc: Optional[RisAssociation] = None, jobs: int = 1) -> Tuple[Allocation, UtilityBreakdown]:
    """EDS + SCA kıyası: (tahsis, döküm)"""
    alloc, breakdown, _ = eds_solve_detailed(scenario, real, phases, assoc, jobs)
    return alloc, breakdown


def brute_force_oracle(scenario: Scenario, real: ChannelRealization, phases: Optional[RisPhases],
                       assoc: Optional[RisAssociation], power_grid: int) -> Tuple[Allocation, float]:
    """
    Ayrık konfigürasyonlar × düzgün güç ızgarası üzerinde kapsamlı arama

    Bağlantı başına güç seviyeleri {0, P/(g-1), ..., P}; bütçeyi aşan vektörler atlanır.

    Raises:
        SearchSpaceTooLarge: Toplam değerlendirme sayısı 10^7'yi aşarsa
    """
    if power_grid < 2:
        raise ValueError(f"power_grid must be >= 2, got {power_grid}")
    phases = phases if phases is not None else RisPhases.zeros(scenario)
    assoc = assoc if assoc is not None else fix_ris_association(scenario)
    gains = link_gains(real, phases, assoc)

    tables = vsp_choice_lists(scenario)
    total = int(np.prod([len(t) for t in tables]))
    configurations = configurations_in_range(scenario, tables, 0, total)
    active = configurations.sum(axis=(1, 2, 3, 4))
    joint = int(np.sum(np.power(float(power_grid), active)))
    if joint > ORACLE_LIMIT:
        raise SearchSpaceTooLarge(joint, ORACLE_LIMIT, "power-grid evaluations")

    levels = scenario.p_max * np.arange(power_grid) / (power_grid - 1)
    best_reward = -np.inf
    best_alloc = None
    for omega in configurations:
        links = np.argwhere(omega == 1)
        if len(links):
            grid = np.array(list(itertools.product(levels, repeat=len(links))))
        else:
            grid = np.zeros((1, 0))
        power = np.zeros((len(grid),) + omega.shape)
        if len(links):
            power[(slice(None),) + tuple(links.T)] = grid
        feasible = np.all(power.sum(axis=(3, 4)) <= scenario.p_max * (1.0 + 1e-12), axis=(1, 2))
        if not np.any(feasible):
            continue
        power = power[feasible]
        rewards = evaluate_rewards(scenario, gains, omega, power)
        index = int(np.argmax(rewards))
        if rewards[index] > best_reward:
            best_reward = float(rewards[index])
            best_alloc = Allocation.from_schedule(omega, power[index], phases)
    return best_alloc, best_reward
