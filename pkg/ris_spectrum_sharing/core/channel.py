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
Kanal Modülü
============

Yol kaybı × Rayleigh sönümlemesi ile doğrudan, BS→RIS ve RIS→kullanıcı
kanallarını üretir ve RIS destekli efektif kanalı hesaplar.

Her (bağlantı sınıfı, alt kanal) çifti ana tohumdan türetilen ayrı bir
rastgele alt akış kullanır; RIS eleman sayısını değiştirmek doğrudan kanal
çekimlerini etkilemez.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Union

import numpy as np
import pandas as pd
from scipy.spatial.distance import cdist

from ..exceptions import DegenerateGeometry, DimensionMismatch, NoRis, SchemaMismatch
from ..utils.logger import LogCategory, get_logger
from .scenario import RisAssociation, Scenario


LINK_DIRECT = 0
LINK_BS_RIS = 1
LINK_RIS_USER = 2

LINK_NAMES = {LINK_DIRECT: "direct", LINK_BS_RIS: "bs_ris", LINK_RIS_USER: "ris_user"}

DUMP_COLUMNS = ["link", "b", "j", "k", "c", "m", "re", "im"]

SeedLike = Union[int, np.random.Generator, np.random.SeedSequence]


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """
    Tek bir kanal gerçekleşmesi (complex128, yani çift hassasiyetli re/im çiftleri)

    direct:   (V·B, V·K, C)       h[b, k, c]
    bs_ris:   (V·B, J, C, M)      g[b, j, c, :]
    ris_user: (J, V·K, C, M)      r[j, k, c, :]
    """
    scenario: Scenario
    direct: np.ndarray
    bs_ris: np.ndarray
    ris_user: np.ndarray

    def __post_init__(self):
        s = self.scenario
        expected = {
            "direct": (s.num_bs_total, s.num_users_total, s.num_subchannels),
            "bs_ris": (s.num_bs_total, s.num_ris, s.num_subchannels, s.elements_per_ris),
            "ris_user": (s.num_ris, s.num_users_total, s.num_subchannels, s.elements_per_ris),
        }
        for name, shape in expected.items():
            array = getattr(self, name)
            if array.shape != shape:
                raise DimensionMismatch(f"{name} has shape {array.shape}, expected {shape}")
            array.setflags(write=False)


@dataclass(frozen=True, eq=False)
class RisPhases:
    """RIS faz kaydırmaları θ[j, m] ∈ [0, 2π); tüm alt kanallarda aynı"""
    theta: np.ndarray

    def __post_init__(self):
        if np.any(self.theta < 0.0) or np.any(self.theta >= 2.0 * np.pi):
            raise ValueError("RIS phases must lie in [0, 2π)")
        self.theta.setflags(write=False)

    @classmethod
    def wrap(cls, theta: np.ndarray) -> "RisPhases":
        """Açıları [0, 2π) aralığına sarar"""
        wrapped = np.mod(np.asarray(theta, dtype=float), 2.0 * np.pi)
        wrapped[wrapped >= 2.0 * np.pi] = 0.0
        return cls(wrapped)

    @classmethod
    def zeros(cls, scenario: Scenario) -> "RisPhases":
        return cls(np.zeros((scenario.num_ris, scenario.elements_per_ris)))


def _master_entropy(rng: SeedLike) -> int:
    if isinstance(rng, np.random.Generator):
        return int(rng.integers(0, 2 ** 63))
    if isinstance(rng, np.random.SeedSequence):
        return int(rng.generate_state(1, dtype=np.uint64)[0])
    return int(rng)


def substream(entropy: int, link_class: int, subchannel: int) -> np.random.Generator:
    """(bağlantı sınıfı, alt kanal) için bağımsız alt akış"""
    return np.random.default_rng(np.random.SeedSequence(entropy, spawn_key=(link_class, subchannel)))


def rayleigh(rng: np.random.Generator, shape) -> np.ndarray:
    """Birim varyanslı dairesel karmaşık Gauss örnekleri"""
    real = rng.standard_normal(shape)
    imag = rng.standard_normal(shape)
    return (real + 1j * imag) / np.sqrt(2.0)


def _link_distances(scenario: Scenario):
    bs = scenario.all_bs_positions
    users = scenario.all_user_positions
    ris = scenario.ris_positions
    distances = {
        "direct": cdist(bs, users),
        "bs_ris": cdist(bs, ris) if scenario.num_ris else np.zeros((len(bs), 0)),
        "ris_user": cdist(ris, users) if scenario.num_ris else np.zeros((0, len(users))),
    }
    for name, d in distances.items():
        if d.size and np.min(d) <= 0.0:
            raise DegenerateGeometry(f"{name} link with zero distance at index "
                                     f"{np.unravel_index(np.argmin(d), d.shape)}")
    return distances


def path_gain(scenario: Scenario, distance: np.ndarray) -> np.ndarray:
    """Ortalama güç kazancı ρ0·d^-β"""
    return scenario.ref_gain * np.power(distance, -scenario.pathloss_exponent)


def draw_channels(scenario: Scenario, rng: SeedLike) -> ChannelRealization:
    """
    Yeni bir kanal gerçekleşmesi çeker

    Args:
        scenario: Senaryo
        rng: Generator, SeedSequence ya da tamsayı tohum

    Returns:
        ChannelRealization: Değişmez kanal gerçekleşmesi
    """
    entropy = _master_entropy(rng)
    distances = _link_distances(scenario)
    num_bs = scenario.num_bs_total
    num_users = scenario.num_users_total
    num_ris = scenario.num_ris
    num_elements = scenario.elements_per_ris
    num_subchannels = scenario.num_subchannels

    direct_amp = np.sqrt(path_gain(scenario, distances["direct"]))
    bs_ris_amp = np.sqrt(path_gain(scenario, distances["bs_ris"]))
    ris_user_amp = np.sqrt(path_gain(scenario, distances["ris_user"]))

    direct = np.empty((num_bs, num_users, num_subchannels), dtype=complex)
    bs_ris = np.empty((num_bs, num_ris, num_subchannels, num_elements), dtype=complex)
    ris_user = np.empty((num_ris, num_users, num_subchannels, num_elements), dtype=complex)

    for c in range(num_subchannels):
        direct[:, :, c] = direct_amp * rayleigh(substream(entropy, LINK_DIRECT, c), (num_bs, num_users))
        bs_ris[:, :, c, :] = bs_ris_amp[:, :, None] * rayleigh(
            substream(entropy, LINK_BS_RIS, c), (num_bs, num_ris, num_elements))
        ris_user[:, :, c, :] = ris_user_amp[:, :, None] * rayleigh(
            substream(entropy, LINK_RIS_USER, c), (num_ris, num_users, num_elements))

    return ChannelRealization(scenario=scenario, direct=direct, bs_ris=bs_ris, ris_user=ris_user)


def _theta(phases) -> np.ndarray:
    return phases.theta if isinstance(phases, RisPhases) else np.asarray(phases, dtype=float)


def effective_gains(real: ChannelRealization, phases, assoc: RisAssociation) -> np.ndarray:
    """
    Tüm (BS, kullanıcı, alt kanal) üçlüleri için efektif kanal

    h̃[b,k,c] = h[b,k,c] + Σ_j d[j,k] Σ_m conj(r[j,k,c,m]) e^{iθ[j,m]} g[b,j,c,m]

    Returns:
        np.ndarray: (V·B, V·K, C) karmaşık dizi
    """
    theta = _theta(phases)
    if real.scenario.num_ris == 0:
        return real.direct.copy()
    cascade = np.einsum("jkcm,jm,bjcm,jk->bkc", np.conj(real.ris_user), np.exp(1j * theta),
                        real.bs_ris, assoc.d.astype(float), optimize=True)
    return real.direct + cascade


def effective_channel(real: ChannelRealization, phases, assoc: RisAssociation,
                      b: int, k: int, c: int) -> complex:
    """Tek bir (global BS b, global kullanıcı k, alt kanal c) için efektif kanal"""
    theta = _theta(phases)
    value = complex(real.direct[b, k, c])
    for j in np.flatnonzero(assoc.d[:, k]):
        value += complex(np.sum(np.conj(real.ris_user[j, k, c]) * np.exp(1j * theta[j]) * real.bs_ris[b, j, c]))
    return value


def align_phases_oracle(real: ChannelRealization, assoc: RisAssociation,
                        b: int, k: int, c: int) -> RisPhases:
    """
    Kullanıcının RIS'ini doğrudan yol ile eş fazlı hizalar

    Diğer RIS'lerin fazları sıfır kalır.

    Raises:
        NoRis: Kullanıcının ilişkili bir RIS'i yoksa
    """
    j = assoc.ris_of_user(k)
    if j is None:
        raise NoRis(f"user {k} has no associated RIS")
    cascade = np.conj(real.ris_user[j, k, c]) * real.bs_ris[b, j, c]
    theta = np.zeros((real.scenario.num_ris, real.scenario.elements_per_ris))
    theta[j] = np.angle(real.direct[b, k, c]) - np.angle(cascade)
    return RisPhases.wrap(theta)


def dump_realization(real: ChannelRealization, path: Union[str, Path]) -> Path:
    """
    Gerçekleşmeyi (link, b, j, k, c, m, re, im) CSV tablosu olarak yazar

    Kullanılmayan indeksler -1 olarak yazılır.
    """
    frames = []
    b, k, c = np.indices(real.direct.shape).reshape(3, -1)
    frames.append(pd.DataFrame({"link": LINK_DIRECT, "b": b, "j": -1, "k": k, "c": c, "m": -1,
                                "re": real.direct.real.ravel(), "im": real.direct.imag.ravel()}))
    if real.bs_ris.size:
        b, j, c, m = np.indices(real.bs_ris.shape).reshape(4, -1)
        frames.append(pd.DataFrame({"link": LINK_BS_RIS, "b": b, "j": j, "k": -1, "c": c, "m": m,
                                    "re": real.bs_ris.real.ravel(), "im": real.bs_ris.imag.ravel()}))
    if real.ris_user.size:
        j, k, c, m = np.indices(real.ris_user.shape).reshape(4, -1)
        frames.append(pd.DataFrame({"link": LINK_RIS_USER, "b": -1, "j": j, "k": k, "c": c, "m": m,
                                    "re": real.ris_user.real.ravel(), "im": real.ris_user.imag.ravel()}))

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.concat(frames, ignore_index=True)[DUMP_COLUMNS].to_csv(path, index=False, float_format="%.17g")
    get_logger().debug(f"Channel realization pinned to {path}", LogCategory.CHANNEL)
    return path


def load_realization(scenario: Scenario, path: Union[str, Path]) -> ChannelRealization:
    """
    dump_realization ile yazılmış CSV'den gerçekleşmeyi okur

    Raises:
        SchemaMismatch: Kolonlar eksikse
        DimensionMismatch: Satır sayısı senaryoyla uyuşmuyorsa
    """
    table = pd.read_csv(path, float_precision="round_trip")
    missing = [column for column in DUMP_COLUMNS if column not in table.columns]
    if missing:
        raise SchemaMismatch(str(path), missing)

    shapes = {
        LINK_DIRECT: (scenario.num_bs_total, scenario.num_users_total, scenario.num_subchannels),
        LINK_BS_RIS: (scenario.num_bs_total, scenario.num_ris, scenario.num_subchannels,
                      scenario.elements_per_ris),
        LINK_RIS_USER: (scenario.num_ris, scenario.num_users_total, scenario.num_subchannels,
                        scenario.elements_per_ris),
    }
    index_columns = {LINK_DIRECT: ["b", "k", "c"], LINK_BS_RIS: ["b", "j", "c", "m"],
                     LINK_RIS_USER: ["j", "k", "c", "m"]}

    arrays = {}
    for link, shape in shapes.items():
        rows = table[table["link"] == link]
        array = np.zeros(shape, dtype=complex)
        if len(rows) != int(np.prod(shape)):
            raise DimensionMismatch(f"{LINK_NAMES[link]}: {len(rows)} rows, expected {int(np.prod(shape))}")
        if len(rows):
            index = tuple(rows[col].to_numpy(dtype=int) for col in index_columns[link])
            array[index] = rows["re"].to_numpy(dtype=float) + 1j * rows["im"].to_numpy(dtype=float)
        arrays[link] = array

    get_logger().debug(f"Channel realization loaded from {path}", LogCategory.CHANNEL)
    return ChannelRealization(scenario=scenario, direct=arrays[LINK_DIRECT],
                              bs_ris=arrays[LINK_BS_RIS], ris_user=arrays[LINK_RIS_USER])


def mean_path_gains(scenario: Scenario) -> Dict[str, float]:
    """Bağlantı sınıfı başına RMS genlik ölçeği (durum standardizasyonu için)"""
    distances = _link_distances(scenario)
    scales = {}
    for name, d in distances.items():
        scales[name] = float(np.sqrt(np.mean(path_gain(scenario, d)))) if d.size else 1.0
    return scales
