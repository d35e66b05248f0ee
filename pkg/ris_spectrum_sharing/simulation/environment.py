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
Ortam Modülü
============

MDP ortamı: durum kodlama, ham aksiyonun uygulanabilir tahsise deterministik
projeksiyonu, ödül hesabı ve bölüm adımlama.

Ham aksiyon düzeni: zamanlama logitleri (V, B, K, C), güç oranları (V, B, K, C),
faz kontrolleri (J, M); hepsi [-1, 1] aralığında.
"""

from typing import Dict, Optional, Tuple

import numpy as np

from ..core.channel import ChannelRealization, RisPhases, draw_channels, mean_path_gains
from ..core.scenario import RisAssociation, Scenario, fix_ris_association
from ..exceptions import DimensionMismatch, NotReset
from ..utils.logger import LogCategory, get_logger
from .phy import Allocation, UtilityBreakdown, link_gains, utility_from_gains


DEFAULT_EPISODE_LENGTH = 100


def _split(scenario: Scenario, vector: np.ndarray):
    shape = scenario.allocation_shape
    size = int(np.prod(shape))
    if vector.shape != (scenario.action_dim,):
        raise DimensionMismatch(f"action has shape {vector.shape}, expected ({scenario.action_dim},)")
    schedule = vector[:size].reshape(shape)
    power = vector[size:2 * size].reshape(shape)
    phase = vector[2 * size:].reshape(scenario.num_ris, scenario.elements_per_ris)
    return schedule, power, phase


def _phases_from_controls(controls: np.ndarray) -> RisPhases:
    return RisPhases.wrap(np.pi * (controls + 1.0))


def project_action(scenario: Scenario, assoc: Optional[RisAssociation], raw: np.ndarray) -> Allocation:
    """
    Ham aksiyonu uygulanabilir tahsise projekte eder

    Adımlar: eşikleme, kullanıcı başına en yüksek (b, c) adayı, (v, b, c) başına
    en yüksek L_c kullanıcı, ω'dan φ türetme, güç ölçekleme, faz eşlemesi.
    Eşitlikte düşük indeks kazanır.

    Args:
        scenario: Senaryo
        assoc: RIS ilişkilendirmesi (projeksiyon bunu kullanmaz; imza uyumu için)
        raw: (|A|,) ham aksiyon; [-1, 1] dışı değerler kırpılır

    Returns:
        Allocation: Kısıtları (QoS hariç) sağlayan tahsis
    """
    raw = np.clip(np.asarray(raw, dtype=float), -1.0, 1.0)
    schedule, fractions, controls = _split(scenario, raw)
    num_vsps, bs_per_vsp, users_per_vsp, num_subchannels = scenario.allocation_shape

    score = (schedule + 1.0) / 2.0
    bits = score >= 0.5

    # Kullanıcı başına tek (b, c)
    per_user = np.where(bits, score, -np.inf).transpose(0, 2, 1, 3).reshape(
        num_vsps, users_per_vsp, bs_per_vsp * num_subchannels)
    best = np.argmax(per_user, axis=-1)
    chosen = np.zeros(per_user.shape, dtype=bool)
    np.put_along_axis(chosen, best[..., None], True, axis=-1)
    chosen &= bits.transpose(0, 2, 1, 3).reshape(per_user.shape)
    omega = chosen.reshape(num_vsps, users_per_vsp, bs_per_vsp, num_subchannels).transpose(0, 2, 1, 3)

    # (v, b, c) başına en fazla L_c kullanıcı
    candidates = np.where(omega, score, -np.inf)
    order = np.argsort(-candidates, axis=2, kind="stable")
    ranks = np.empty_like(order)
    np.put_along_axis(ranks, order,
                      np.broadcast_to(np.arange(users_per_vsp)[None, None, :, None], order.shape), axis=2)
    omega = omega & (ranks < scenario.max_users_per_subchannel)
    omega = omega.astype(np.int8)

    power = (fractions + 1.0) / 2.0 * scenario.p_max * omega
    totals = power.sum(axis=(2, 3))
    over = totals > scenario.p_max
    scale = np.ones_like(totals)
    scale[over] = scenario.p_max / totals[over]
    power = power * scale[:, :, None, None]

    return Allocation.from_schedule(omega, power, _phases_from_controls(controls))


def encode_action(scenario: Scenario, alloc: Allocation) -> np.ndarray:
    """Tahsisi [-1, 1] ham aksiyon uzayına kodlar (projeksiyonun sabit noktası)"""
    omega = alloc.omega.astype(float)
    power = np.where(alloc.omega == 1, 2.0 * alloc.power / scenario.p_max - 1.0, -1.0)
    phase = alloc.phases.theta / np.pi - 1.0
    return np.concatenate([(2.0 * omega - 1.0).ravel(), power.ravel(), phase.ravel()])


def decode_action(scenario: Scenario, vector: np.ndarray) -> Allocation:
    """encode_action'ın tersi"""
    schedule, power, controls = _split(scenario, np.asarray(vector, dtype=float))
    omega = (schedule > 0.0).astype(np.int8)
    return Allocation.from_schedule(omega, (power + 1.0) / 2.0 * scenario.p_max * omega,
                                    _phases_from_controls(controls))


def _interleave(values: np.ndarray) -> np.ndarray:
    return np.stack([values.real, values.imag], axis=-1).ravel()


def channel_features(real: ChannelRealization, scales: Dict[str, float]) -> np.ndarray:
    """Bağlantı sınıfı ölçeğiyle standartlaştırılmış (re, im) çiftleri"""
    return np.concatenate([
        _interleave(real.direct / scales["direct"]),
        _interleave(real.bs_ris / scales["bs_ris"]),
        _interleave(real.ris_user / scales["ris_user"]),
    ])


def state_dim(scenario: Scenario) -> int:
    """|H| + K + |A|"""
    channel_entries = (scenario.num_bs_total * scenario.num_users_total * scenario.num_subchannels
                       + scenario.num_bs_total * scenario.num_ris * scenario.num_subchannels
                       * scenario.elements_per_ris
                       + scenario.num_ris * scenario.num_users_total * scenario.num_subchannels
                       * scenario.elements_per_ris)
    return 2 * channel_entries + scenario.num_users_total + scenario.action_dim


class SpectrumSharingEnv:
    """
    Çok-VSP spektrum paylaşım ortamı

    Kanallar reset'te yeniden çekilir ve bölüm boyunca sabit kalır.
    """

    def __init__(self, scenario: Scenario, assoc: Optional[RisAssociation] = None,
                 episode_length: int = DEFAULT_EPISODE_LENGTH, seed=None):
        """
        Ortamı başlatır

        Args:
            scenario: Senaryo
            assoc: RIS ilişkilendirmesi (None: topolojiden sabitlenir)
            episode_length: Bölüm başına adım sayısı
            seed: Kanal çekimleri için tohum
        """
        if episode_length < 1:
            raise ValueError(f"episode_length must be >= 1, got {episode_length}")
        self.scenario = scenario
        self.assoc = assoc if assoc is not None else fix_ris_association(scenario)
        self.episode_length = int(episode_length)
        self.rng = np.random.default_rng(seed)
        self.scales = mean_path_gains(scenario)

        self.realization: Optional[ChannelRealization] = None
        self.last_allocation: Optional[Allocation] = None
        self._channel_state: Optional[np.ndarray] = None
        self._rates = np.zeros(scenario.num_users_total)
        self._previous_action = encode_action(scenario, Allocation.empty(scenario))
        self._step = 0
        self._ready = False

        self.stats = {
            "episodes": 0,
            "steps": 0
        }

    @property
    def action_dim(self) -> int:
        return self.scenario.action_dim

    @property
    def state_dim(self) -> int:
        return state_dim(self.scenario)

    def _state(self) -> np.ndarray:
        return np.concatenate([self._channel_state, self._rates / self.scenario.bandwidth,
                               self._previous_action])

    def reset(self, seed=None) -> np.ndarray:
        """
        Yeni bölüm başlatır: taze sönümleme, sıfır hızlar, boş önceki aksiyon

        Returns:
            np.ndarray: Başlangıç durumu
        """
        if seed is not None:
            self.rng = np.random.default_rng(seed)
        self.realization = draw_channels(self.scenario, self.rng)
        self._channel_state = channel_features(self.realization, self.scales)
        self._rates = np.zeros(self.scenario.num_users_total)
        self._previous_action = encode_action(self.scenario, Allocation.empty(self.scenario))
        self.last_allocation = None
        self._step = 0
        self._ready = True
        self.stats["episodes"] += 1
        get_logger().debug(f"Episode {self.stats['episodes']} reset", LogCategory.ENVIRONMENT)
        return self._state()

    def step(self, raw: np.ndarray) -> Tuple[np.ndarray, float, bool, UtilityBreakdown]:
        """
        Ham aksiyonu uygular

        Returns:
            tuple: (sonraki durum, ödül, bölüm bitti mi, fayda dökümü)

        Raises:
            NotReset: reset çağrılmadıysa ya da bölüm bittiyse
        """
        if not self._ready:
            raise NotReset("call reset() before step()")

        alloc = project_action(self.scenario, self.assoc, raw)
        gains = link_gains(self.realization, alloc.phases, self.assoc)
        breakdown = utility_from_gains(self.scenario, gains, alloc)

        self.last_allocation = alloc
        self._rates = breakdown.rates.ravel().copy()
        self._previous_action = encode_action(self.scenario, alloc)
        self._step += 1
        self.stats["steps"] += 1

        done = self._step >= self.episode_length
        if done:
            self._ready = False
        return self._state(), float(breakdown.reward), done, breakdown
