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
PHY ve Ekonomi Modülü
=====================

Verilen tahsis ve kanal gerçekleşmesi için girişim, SINR, hız ve VSP başına
ekonomik büyüklükleri (gelir, maliyet, fayda, QoS cezası) hesaplar.

Tahsis dizileri (V, B, K, C) sıralıdır. Toplu değerlendirme fonksiyonları baştaki
"..." boyutlarını yayınlar; EDS aşama-1 ve ortam adımı aynı yolu kullanır.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np

from ..core.channel import ChannelRealization, RisPhases, effective_gains
from ..core.scenario import RisAssociation, Scenario


@dataclass(frozen=True, eq=False)
class Allocation:
    """
    Kısıt-uyumlu tahsis

    omega: (V, B, K, C) zamanlama bitleri
    phi:   (V, B, K) BS ilişkilendirme bitleri
    power: (V, B, K, C) iletim güçleri
    phases: RIS fazları
    """
    omega: np.ndarray
    phi: np.ndarray
    power: np.ndarray
    phases: RisPhases

    @classmethod
    def empty(cls, scenario: Scenario, phases: Optional[RisPhases] = None) -> "Allocation":
        shape = scenario.allocation_shape
        return cls(omega=np.zeros(shape, dtype=np.int8),
                   phi=np.zeros(shape[:3], dtype=np.int8),
                   power=np.zeros(shape),
                   phases=phases if phases is not None else RisPhases.zeros(scenario))

    @classmethod
    def from_schedule(cls, omega: np.ndarray, power: np.ndarray, phases: RisPhases) -> "Allocation":
        """φ'yi ω'dan türeterek tahsis oluşturur"""
        omega = np.asarray(omega, dtype=np.int8)
        phi = omega.any(axis=-1).astype(np.int8)
        return cls(omega=omega, phi=phi, power=np.asarray(power, dtype=float) * omega, phases=phases)

    def active_links(self) -> np.ndarray:
        """Aktif (v, b, k, c) indeksleri, sözlük sırasıyla"""
        return np.argwhere(self.omega == 1)


@dataclass(frozen=True, eq=False)
class UtilityBreakdown:
    """VSP başına gelir/maliyet/fayda dökümü ve QoS cezası"""
    revenue: np.ndarray
    spectrum_cost: np.ndarray
    ris_cost: np.ndarray
    power_cost: np.ndarray
    utility: np.ndarray
    sum_utility: float
    qos_penalty: float
    rates: np.ndarray
    sinr: np.ndarray
    num_reused: np.ndarray
    num_dedicated: np.ndarray
    num_ris: np.ndarray

    @property
    def reward(self) -> float:
        """Toplam fayda eksi QoS cezası"""
        return self.sum_utility - self.qos_penalty

    @property
    def sum_rate(self) -> float:
        return float(np.sum(self.rates))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "revenue": self.revenue.tolist(),
            "spectrum_cost": self.spectrum_cost.tolist(),
            "ris_cost": self.ris_cost.tolist(),
            "power_cost": self.power_cost.tolist(),
            "utility": self.utility.tolist(),
            "sum_utility": self.sum_utility,
            "qos_penalty": self.qos_penalty,
            "reward": self.reward,
            "rates": self.rates.tolist(),
            "num_reused": self.num_reused.tolist(),
            "num_dedicated": self.num_dedicated.tolist(),
            "num_ris": self.num_ris.tolist(),
        }


def link_gains(real: ChannelRealization, phases: RisPhases, assoc: RisAssociation) -> np.ndarray:
    """
    Efektif kanal güç kazançları |h̃|²

    Returns:
        np.ndarray: (V, B, V, K, C); [v, b, w, k, c] = BS (v,b) → kullanıcı (w,k)
    """
    s = real.scenario
    gains = np.abs(effective_gains(real, phases, assoc)) ** 2
    return gains.reshape(s.num_vsps, s.bs_per_vsp, s.num_vsps, s.users_per_vsp, s.num_subchannels)


def own_gains(gains: np.ndarray) -> np.ndarray:
    """Aynı VSP içi kazançlar: (..., V, B, K, C)"""
    return np.einsum("...vbvkc->...vbkc", gains)


def interference_terms(scenario: Scenario, gains: np.ndarray, omega: np.ndarray,
                       power: np.ndarray):
    """
    Üç girişim terimi (hücre içi, VSP içi, VSP'ler arası)

    Terimler dışarıda bırakarak toplanır, çıkarma ile iptal yapılmaz.

    Returns:
        tuple: I1 (..., V, B, K, C), I2 (..., V, B, K, C), I3 (..., V, K, C)
    """
    num_vsps, bs_per_vsp, users_per_vsp, _ = scenario.allocation_shape
    tx = omega * power
    g_own = own_gains(gains)
    per_bs = tx.sum(axis=-2)

    others_k = 1.0 - np.eye(users_per_vsp)
    others_b = 1.0 - np.eye(bs_per_vsp)
    others_v = 1.0 - np.eye(num_vsps)

    intra_cell = np.einsum("...vbuc,uk->...vbkc", tx, others_k) * g_own
    intra_vsp = np.einsum("...vxc,...vxkc,xb->...vbkc", per_bs, g_own, others_b)
    inter_vsp = np.einsum("...wxc,...wxvkc,wv->...vkc", per_bs, gains, others_v)
    inter_vsp = inter_vsp * scenario.reuse_flags
    return intra_cell, intra_vsp, inter_vsp


def sinr_tensor(scenario: Scenario, gains: np.ndarray, omega: np.ndarray,
                power: np.ndarray) -> np.ndarray:
    """Tüm (v, b, k, c) için SINR; zamanlanmamış bağlantılarda 0"""
    intra_cell, intra_vsp, inter_vsp = interference_terms(scenario, gains, omega, power)
    total = intra_cell + intra_vsp + inter_vsp[..., :, None, :, :]
    signal = omega * power * own_gains(gains)
    return signal / (total + scenario.noise_power)


def rate_tensor(scenario: Scenario, sinr: np.ndarray) -> np.ndarray:
    """B_c·log2(1 + sinr)"""
    return scenario.bandwidth * np.log1p(sinr) / np.log(2.0)


def evaluate_batch(scenario: Scenario, gains: np.ndarray, omega: np.ndarray,
                   power: np.ndarray) -> Dict[str, np.ndarray]:
    """
    Baştaki boyutlar boyunca toplu ekonomik değerlendirme

    Args:
        scenario: Senaryo
        gains: (..., V, B, V, K, C) kazançlar
        omega: (..., V, B, K, C) zamanlama
        power: (..., V, B, K, C) güçler

    Returns:
        dict: sinr, rates (..., V, K), kullanım sayıları, maliyetler, utility (..., V),
        sum_utility, qos_penalty, reward (...)
    """
    omega = np.asarray(omega, dtype=float)
    power = np.asarray(power, dtype=float) * omega
    sinr = sinr_tensor(scenario, gains, omega, power)
    rates = rate_tensor(scenario, sinr).sum(axis=(-3, -1))

    used = omega.any(axis=(-3, -2))
    flags = scenario.reuse_flags
    num_reused = (used * flags).sum(axis=-1)
    num_dedicated = (used * (1 - flags)).sum(axis=-1)
    num_ris = np.broadcast_to(scenario.ris_per_vsp, num_reused.shape)

    prices = scenario.prices
    spectrum_cost = prices.reused * num_reused + prices.dedicated * num_dedicated
    ris_cost = prices.ris * num_ris
    power_cost = prices.power * scenario.bandwidth * power.sum(axis=(-3, -2, -1))
    revenue = scenario.profit_per_rate * rates.sum(axis=-1)
    utility = scenario.phi1 * revenue - scenario.phi2 * (spectrum_cost + ris_cost + power_cost)

    shortfall = np.maximum(0.0, scenario.rate_threshold - rates)
    qos_penalty = scenario.qos_penalty_weight * shortfall.sum(axis=(-2, -1))
    sum_utility = utility.sum(axis=-1)

    return {
        "sinr": sinr,
        "rates": rates,
        "num_reused": num_reused,
        "num_dedicated": num_dedicated,
        "num_ris": num_ris,
        "revenue": revenue,
        "spectrum_cost": spectrum_cost,
        "ris_cost": ris_cost,
        "power_cost": power_cost,
        "utility": utility,
        "sum_utility": sum_utility,
        "qos_penalty": qos_penalty,
        "reward": sum_utility - qos_penalty,
    }


def evaluate_rewards(scenario: Scenario, gains: np.ndarray, omega: np.ndarray,
                     power: np.ndarray) -> np.ndarray:
    """Toplu ödül (sum_utility - qos_penalty)"""
    return evaluate_batch(scenario, gains, omega, power)["reward"]


def utility_from_gains(scenario: Scenario, gains: np.ndarray, alloc: Allocation) -> UtilityBreakdown:
    """Önceden hesaplanmış kazançlarla fayda dökümü"""
    result = evaluate_batch(scenario, gains, alloc.omega, alloc.power)
    return UtilityBreakdown(
        revenue=result["revenue"],
        spectrum_cost=result["spectrum_cost"],
        ris_cost=np.asarray(result["ris_cost"], dtype=float),
        power_cost=result["power_cost"],
        utility=result["utility"],
        sum_utility=float(result["sum_utility"]),
        qos_penalty=float(result["qos_penalty"]),
        rates=result["rates"],
        sinr=result["sinr"],
        num_reused=result["num_reused"].astype(int),
        num_dedicated=result["num_dedicated"].astype(int),
        num_ris=np.asarray(result["num_ris"], dtype=int),
    )


def utility_breakdown(scenario: Scenario, real: ChannelRealization, phases: RisPhases,
                      assoc: RisAssociation, alloc: Allocation) -> UtilityBreakdown:
    """
    VSP başına gelir, maliyet ve fayda

    Args:
        scenario: Senaryo
        real: Kanal gerçekleşmesi
        phases: RIS fazları (kazançların hesaplandığı fazlar)
        assoc: RIS ilişkilendirmesi
        alloc: Uygun tahsis

    Returns:
        UtilityBreakdown: Döküm
    """
    return utility_from_gains(scenario, link_gains(real, phases, assoc), alloc)


def interference(real: ChannelRealization, phases: RisPhases, assoc: RisAssociation,
                 alloc: Allocation, k: int, v: int, b: int, c: int) -> float:
    """
    Kullanıcı (v, k)'nın BS (v, b) ve alt kanal c üzerindeki toplam girişimi

    I1 + I2 + δ_c·I3; indeksler VSP içi yereldir.
    """
    scenario = real.scenario
    gains = link_gains(real, phases, assoc)
    intra_cell, intra_vsp, inter_vsp = interference_terms(
        scenario, gains, alloc.omega.astype(float), alloc.power * alloc.omega)
    return float(intra_cell[v, b, k, c] + intra_vsp[v, b, k, c] + inter_vsp[v, k, c])


def sinr_and_rate(real: ChannelRealization, phases: RisPhases, assoc: RisAssociation,
                  alloc: Allocation, k: int, v: int, b: int, c: int):
    """(sinr, rate) çifti; ω=0 ise (0, 0)"""
    scenario = real.scenario
    gains = link_gains(real, phases, assoc)
    sinr = sinr_tensor(scenario, gains, alloc.omega.astype(float), alloc.power * alloc.omega)
    value = float(sinr[v, b, k, c])
    return value, float(rate_tensor(scenario, value))


def check_allocation(scenario: Scenario, alloc: Allocation, tolerance: float = 1e-9) -> List[str]:
    """
    Tahsisi kısıtlara karşı denetler

    Returns:
        list: İhlal açıklamaları (boş liste uygun demektir)
    """
    violations = []
    omega = np.asarray(alloc.omega)
    phi = np.asarray(alloc.phi)
    power = np.asarray(alloc.power)
    budget = scenario.p_max * (1.0 + tolerance) + tolerance

    if omega.shape != scenario.allocation_shape or power.shape != scenario.allocation_shape:
        return [f"allocation shape {omega.shape} does not match {scenario.allocation_shape}"]
    if not np.all(np.isin(omega, (0, 1))) or not np.all(np.isin(phi, (0, 1))):
        violations.append("omega/phi must be binary")

    occupancy = omega.sum(axis=2)
    for v, b, c in np.argwhere(occupancy > scenario.max_users_per_subchannel):
        violations.append(f"BS ({v},{b}) subchannel {c} carries {occupancy[v, b, c]} users")

    bs_power = power.sum(axis=(2, 3))
    for v, b in np.argwhere(bs_power > budget):
        violations.append(f"BS ({v},{b}) power {bs_power[v, b]:.6g} exceeds {scenario.p_max:.6g}")

    if np.any(power < -tolerance):
        violations.append("negative power")
    if np.any(power > omega * budget):
        violations.append("power on unscheduled link")

    for v, k in np.argwhere(phi.sum(axis=1) > 1):
        violations.append(f"user ({v},{k}) associated with several BSs")
    for v, k in np.argwhere(omega.sum(axis=(1, 3)) > 1):
        violations.append(f"user ({v},{k}) scheduled on several (BS, subchannel) pairs")
    if np.any(omega > phi[..., None]):
        violations.append("scheduled without BS association")

    theta = alloc.phases.theta
    if theta.shape != (scenario.num_ris, scenario.elements_per_ris):
        violations.append(f"phase shape {theta.shape} does not match the RIS deployment")
    return violations
