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
SCA Güç Optimizasyonu
=====================

Sabit ayrık konfigürasyon (ω*, φ*) ve sabit RIS fazları için iletim güçlerini
ardışık konveks yaklaşımla iyileştirir. Her dış iterasyonda girişim logaritması
birinci dereceden Taylor açılımıyla üstten sınırlanır; elde edilen konkav alt
sınır, BS bütçesi üzerinde izdüşümlü gradyan artışı ve Armijo geri izlemesiyle
maksimize edilir. QoS kısıtları ceza çarpanıyla ele alınır, ihlal sürerse çarpan
10 katına çıkarılır.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.optimize import bisect

from ..core.channel import RisPhases
from ..core.scenario import Scenario
from ..exceptions import InfeasibleQoS
from ..simulation.phy import Allocation, UtilityBreakdown, utility_from_gains
from ..utils.logger import LogCategory, get_logger


DEFAULT_MAX_ITERATIONS = 30
DEFAULT_TOLERANCE = 1e-6
MAX_ESCALATIONS = 5
ESCALATION_FACTOR = 10.0
ARMIJO_C = 1e-4
INNER_MAX_ITERATIONS = 500
INNER_STEP_TOLERANCE = 1e-13


@dataclass
class ScaResult:
    """SCA çıktısı"""
    power: np.ndarray
    objective: float
    initial_objective: float
    history: List[float]
    phase_histories: List[List[float]]
    iterations: int
    escalations: int
    qos_infeasible: bool
    breakdown: UtilityBreakdown
    multipliers: List[float] = field(default_factory=list)


class LinkModel:
    """
    Aktif bağlantılar üzerindeki güç-hız modeli

    signal[l]: bağlantının kendi kazancı, coupling[l, l']: l' vericisinin l alıcısına
    girişim kazancı (aynı alt kanal, VSP'ler arası terim δ_c ile çarpılı).
    """

    def __init__(self, scenario: Scenario, gains: np.ndarray, omega: np.ndarray,
                 power_budget: Optional[float] = None):
        self.scenario = scenario
        self.gains = gains
        self.omega = np.asarray(omega, dtype=np.int8)
        self.budget = scenario.p_max if power_budget is None else float(power_budget)
        self.links = np.argwhere(self.omega == 1)
        v, b, k, c = self.links.T
        self.vsp, self.bs, self.user, self.sub = v, b, k, c

        self.signal = gains[v, b, v, k, c]
        same_sub = c[:, None] == c[None, :]
        same_vsp = v[:, None] == v[None, :]
        reuse = scenario.reuse_flags[c][:, None]
        # coupling[l, m] = kazanç(BS_m → kullanıcı_l)
        cross = gains[v[None, :], b[None, :], v[:, None], k[:, None], c[:, None]]
        self.coupling = cross * same_sub * np.where(same_vsp, 1.0, reuse)
        np.fill_diagonal(self.coupling, 0.0)

        self.bs_index = v * scenario.bs_per_vsp + b
        self.weight = scenario.phi1 * scenario.profit_per_rate[v]
        self.threshold = scenario.rate_threshold[v, k]
        self.rate_scale = scenario.bandwidth / np.log(2.0)
        self.power_price = scenario.phi2 * scenario.prices.power * scenario.bandwidth

        base = Allocation.from_schedule(self.omega, np.zeros(self.omega.shape), RisPhases.zeros(scenario))
        empty = utility_from_gains(scenario, gains, base)
        self.constant = empty.sum_utility
        scheduled = np.zeros(scenario.rate_threshold.shape, dtype=bool)
        scheduled[v, k] = True
        self.unscheduled_penalty = scenario.qos_penalty_weight * float(
            np.sum(scenario.rate_threshold[~scheduled]))

    @property
    def size(self) -> int:
        return len(self.links)

    def uniform_power(self) -> np.ndarray:
        """Her BS bütçesinin aktif bağlantılarına eşit bölünmesi"""
        counts = np.bincount(self.bs_index, minlength=self.scenario.num_bs_total)
        return self.budget / counts[self.bs_index] if self.size else np.zeros(0)

    def to_tensor(self, p: np.ndarray) -> np.ndarray:
        power = np.zeros(self.omega.shape)
        power[tuple(self.links.T)] = p
        return power

    def rates(self, p: np.ndarray) -> np.ndarray:
        interference = self.scenario.noise_power + self.coupling @ p
        return self.rate_scale * np.log1p(self.signal * p / interference)

    def merit(self, p: np.ndarray, mu: float) -> float:
        """Gerçek amaç; mu = λ_qos iken ödüle eşittir"""
        rates = self.rates(p)
        shortfall = np.maximum(0.0, self.threshold - rates)
        return float(self.constant + np.dot(self.weight, rates) - self.power_price * np.sum(p)
                     - mu * np.sum(shortfall) - self.unscheduled_penalty)

    def surrogate(self, p: np.ndarray, anchor: np.ndarray, mu: float) -> float:
        """Taylor sınırlı konkav alt sınır Û(p; anchor)"""
        rates = self._surrogate_rates(p, anchor)
        shortfall = np.maximum(0.0, self.threshold - rates)
        return float(self.constant + np.dot(self.weight, rates) - self.power_price * np.sum(p)
                     - mu * np.sum(shortfall) - self.unscheduled_penalty)

    def _surrogate_rates(self, p: np.ndarray, anchor: np.ndarray) -> np.ndarray:
        noise = self.scenario.noise_power
        anchor_interference = noise + self.coupling @ anchor
        total = noise + self.signal * p + self.coupling @ p
        linearized = np.log(anchor_interference) + self.coupling @ (p - anchor) / anchor_interference
        return self.rate_scale * (np.log(total) - linearized)

    def surrogate_gradient(self, p: np.ndarray, anchor: np.ndarray, mu: float) -> np.ndarray:
        noise = self.scenario.noise_power
        anchor_interference = noise + self.coupling @ anchor
        total = noise + self.signal * p + self.coupling @ p
        jacobian = self.rate_scale * ((np.diag(self.signal) + self.coupling) / total[:, None]
                                      - self.coupling / anchor_interference[:, None])
        violated = self._surrogate_rates(p, anchor) < self.threshold
        weights = self.weight + mu * violated
        return jacobian.T @ weights - self.power_price

    def project(self, p: np.ndarray) -> np.ndarray:
        """
        BS başına {0 ≤ p ≤ P, Σp ≤ P} kümesine Öklid izdüşümü

        Bütçe aşılırsa Σ clip(p - τ, 0, P) = P denklemi τ için ikiye bölmeyle çözülür.
        """
        projected = np.clip(p, 0.0, self.budget)
        for bs in np.unique(self.bs_index):
            members = self.bs_index == bs
            if projected[members].sum() <= self.budget:
                continue
            values = p[members]

            def excess(tau):
                return np.clip(values - tau, 0.0, self.budget).sum() - self.budget

            tau = bisect(excess, 0.0, float(np.max(values)), xtol=1e-15, maxiter=200)
            projected[members] = np.clip(values - tau, 0.0, self.budget)
        return projected


def _maximize_surrogate(model: LinkModel, anchor: np.ndarray, mu: float) -> np.ndarray:
    """Projeksiyonlu gradyan artışı, Armijo geri izlemesiyle"""
    p = anchor.copy()
    value = model.surrogate(p, anchor, mu)
    step = 1.0
    for _ in range(INNER_MAX_ITERATIONS):
        grad = model.surrogate_gradient(p, anchor, mu)
        accepted = False
        while step > 1e-18:
            candidate = model.project(p + step * grad)
            direction = candidate - p
            gain = float(np.dot(grad, direction))
            if gain <= 0.0:
                break
            new_value = model.surrogate(candidate, anchor, mu)
            if new_value >= value + ARMIJO_C * gain:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break
        moved = np.linalg.norm(direction)
        p, value = candidate, new_value
        step *= 2.0
        if moved <= INNER_STEP_TOLERANCE * (1.0 + np.linalg.norm(p)):
            break
    return p


def sca_refine(scenario: Scenario, gains: np.ndarray, omega: np.ndarray, phases: RisPhases,
               p0: Optional[np.ndarray] = None, max_iterations: int = DEFAULT_MAX_ITERATIONS,
               tolerance: float = DEFAULT_TOLERANCE, power_budget: Optional[float] = None,
               strict_qos: bool = False) -> ScaResult:
    """
    Sabit ayrık konfigürasyon için güç iyileştirmesi

    Args:
        scenario: Senaryo
        gains: (V, B, V, K, C) sabit fazlarla hesaplanmış kazançlar
        omega: (V, B, K, C) zamanlama
        phases: Kazançların hesaplandığı RIS fazları (tahsise eklenir)
        p0: Başlangıç güçleri (V, B, K, C); None ise bağlantılara eşit bölüşüm
        max_iterations: Faz başına dış iterasyon sınırı
        tolerance: Amaç iyileşmesi durma eşiği
        power_budget: BS bütçesi (None: scenario.p_max)
        strict_qos: True ise QoS sağlanamadığında InfeasibleQoS fırlatılır

    Returns:
        ScaResult: En yüksek ödüllü iterasyon
    """
    logger = get_logger()
    model = LinkModel(scenario, gains, omega, power_budget)
    penalty = scenario.qos_penalty_weight

    if model.size == 0:
        p = np.zeros(0)
    elif p0 is None:
        p = model.uniform_power()
    else:
        p = model.project(np.asarray(p0, dtype=float)[tuple(model.links.T)])

    initial = model.merit(p, penalty)
    best_p, best_reward = p.copy(), initial
    phase_histories: List[List[float]] = []
    multipliers: List[float] = []
    iterations = 0
    escalations = 0
    mu = penalty
    infeasible = False

    while model.size:
        history = [model.merit(p, mu)]
        multipliers.append(mu)
        for _ in range(max_iterations):
            p_next = _maximize_surrogate(model, p, mu)
            iterations += 1
            value = model.merit(p_next, mu)
            improvement = value - history[-1]
            p = p_next
            history.append(value)
            reward = model.merit(p, penalty)
            if reward > best_reward:
                best_p, best_reward = p.copy(), reward
            if abs(improvement) < tolerance:
                break
        phase_histories.append(history)

        violated = model.rates(p) < model.threshold - 1e-12
        if not np.any(violated) or penalty == 0.0:
            break
        if escalations >= MAX_ESCALATIONS:
            infeasible = True
            break
        escalations += 1
        mu *= ESCALATION_FACTOR

    power = model.to_tensor(best_p)
    alloc = Allocation.from_schedule(model.omega, power, phases)
    breakdown = utility_from_gains(scenario, gains, alloc)

    if infeasible:
        users = [(int(model.vsp[i]), int(model.user[i]))
                 for i in np.flatnonzero(model.rates(p) < model.threshold - 1e-12)]
        logger.warning(f"QoS unreachable after {escalations} escalations for users {users}",
                       LogCategory.BENCHMARK, {"users": users})
        if strict_qos:
            raise InfeasibleQoS(users, best_reward)

    return ScaResult(
        power=power,
        objective=float(best_reward),
        initial_objective=float(initial),
        history=phase_histories[0] if phase_histories else [float(initial)],
        phase_histories=phase_histories,
        iterations=iterations,
        escalations=escalations,
        qos_infeasible=infeasible,
        breakdown=breakdown,
        multipliers=multipliers,
    )
