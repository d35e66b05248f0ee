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
Senaryo Modülü
==============

Statik ağ tanımı: VSP'ler, baz istasyonları, kullanıcılar, alt kanallar,
RIS yerleşimi, geometri, fiyatlar ve QoS eşikleri. Konfigürasyondan Scenario
üretir ve RIS-BS/kullanıcı ilişkilendirmesini topolojiden sabitler.
"""

import copy
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.spatial.distance import cdist

from ..exceptions import InvalidConfig, OverlappingSets
from .units import db_to_linear, dbm_to_watts, noise_power_watts


DEFAULT_SCENARIO_CONFIG: Dict[str, Any] = {
    "vsps": 2,
    "bs_per_vsp": 1,
    "users_per_vsp": 3,
    "subchannels": 4,
    "reusable": [0, 1],
    "dedicated": [2, 3],
    "l_c": 2,
    "ris": {"count": 1, "elements": 8, "owner": [0], "spread": 0.25},
    "geometry": {"radius_m": 500.0, "separation_m": 800.0},
    "channel": {"pathloss_exponent": 2.5},
    "prices": {"reused": 0.2, "dedicated": 0.5, "ris": 0.3, "power": 0.1},
    "qos": {"threshold": 0.5, "penalty": 50.0},
    "utility": {"phi1": 1.0, "phi2": 1.0, "beta_v": 1.0},
    "units": {
        "mode": "normalized",
        "ref_snr_db": 15.0,
        "p_max_dbm": 30.0,
        "noise_dbm_per_hz": -174.0,
        "bandwidth_hz": 5e6,
        "ref_gain_db": -30.0,
    },
    "seed": 0,
}

_SECTION_KEYS = {
    "ris": {"count", "elements", "owner", "spread"},
    "geometry": {"radius_m", "separation_m", "positions"},
    "channel": {"pathloss_exponent"},
    "prices": {"reused", "dedicated", "ris", "power"},
    "qos": {"threshold", "penalty"},
    "utility": {"phi1", "phi2", "beta_v"},
    "units": {"mode", "ref_snr_db", "p_max_dbm", "noise_dbm_per_hz", "bandwidth_hz", "ref_gain_db"},
}

UNIT_MODES = ("normalized", "physical")


@dataclass(frozen=True)
class PriceBook:
    """MNO fiyat listesi"""
    reused: float
    dedicated: float
    ris: float
    power: float


@dataclass(frozen=True, eq=False)
class Scenario:
    """
    Değişmez ağ tanımı

    İndeksleme kuralı: baz istasyonu (v, b) için global indeks v*B + b,
    kullanıcı (v, k) için global indeks v*K + k.
    """
    num_vsps: int
    bs_per_vsp: int
    users_per_vsp: int
    num_subchannels: int
    reusable_set: Tuple[int, ...]
    dedicated_set: Tuple[int, ...]
    max_users_per_subchannel: int
    num_ris: int
    elements_per_ris: int
    ris_owner_vsp: Tuple[int, ...]
    vsp_centers: np.ndarray
    vsp_radius: float
    bs_positions: np.ndarray
    user_positions: np.ndarray
    ris_positions: np.ndarray
    p_max: float
    noise_power: float
    bandwidth: float
    pathloss_exponent: float
    ref_gain: float
    prices: PriceBook
    profit_per_rate: np.ndarray
    phi1: float
    phi2: float
    rate_threshold: np.ndarray
    qos_penalty_weight: float
    unit_mode: str = "normalized"
    seed: int = 0

    def __post_init__(self):
        for name in ("vsp_centers", "bs_positions", "user_positions", "ris_positions",
                     "profit_per_rate", "rate_threshold"):
            getattr(self, name).setflags(write=False)

    @property
    def reuse_flags(self) -> np.ndarray:
        """Alt kanal başına δ_c"""
        flags = np.zeros(self.num_subchannels, dtype=np.int8)
        flags[list(self.reusable_set)] = 1
        return flags

    @property
    def num_bs_total(self) -> int:
        return self.num_vsps * self.bs_per_vsp

    @property
    def num_users_total(self) -> int:
        return self.num_vsps * self.users_per_vsp

    @property
    def allocation_shape(self) -> Tuple[int, int, int, int]:
        """(V, B, K, C) sıralı tahsis dizilerinin şekli"""
        return (self.num_vsps, self.bs_per_vsp, self.users_per_vsp, self.num_subchannels)

    @property
    def action_dim(self) -> int:
        """|A| = 2·V·B·K·C + J·M"""
        return 2 * int(np.prod(self.allocation_shape)) + self.num_ris * self.elements_per_ris

    @property
    def all_bs_positions(self) -> np.ndarray:
        return self.bs_positions.reshape(-1, 2)

    @property
    def all_user_positions(self) -> np.ndarray:
        return self.user_positions.reshape(-1, 2)

    @property
    def bs_vsp(self) -> np.ndarray:
        return np.repeat(np.arange(self.num_vsps), self.bs_per_vsp)

    @property
    def user_vsp(self) -> np.ndarray:
        return np.repeat(np.arange(self.num_vsps), self.users_per_vsp)

    @property
    def ris_per_vsp(self) -> np.ndarray:
        """VSP başına kiralanan RIS sayısı N^j_v (yerleşimle sabit)"""
        counts = np.zeros(self.num_vsps, dtype=int)
        for owner in self.ris_owner_vsp:
            counts[owner] += 1
        return counts

    def bs_index(self, v: int, b: int) -> int:
        return v * self.bs_per_vsp + b

    def user_index(self, v: int, k: int) -> int:
        return v * self.users_per_vsp + k

    def summary(self) -> Dict[str, Any]:
        """Senaryonun kısa özeti"""
        return {
            "vsps": self.num_vsps,
            "bs_per_vsp": self.bs_per_vsp,
            "users": self.num_users_total,
            "subchannels": self.num_subchannels,
            "reusable": list(self.reusable_set),
            "dedicated": list(self.dedicated_set),
            "l_c": self.max_users_per_subchannel,
            "ris": self.num_ris,
            "elements": self.elements_per_ris,
            "unit_mode": self.unit_mode,
            "ref_gain": self.ref_gain,
            "action_dim": self.action_dim,
            "seed": self.seed,
        }


@dataclass(frozen=True, eq=False)
class RisAssociation:
    """
    RIS ilişkilendirmesi

    d[j, u]: RIS j ile global kullanıcı u arasındaki ikili ilişki,
    controller_bs[j]: RIS j'yi kontrol eden global BS indeksi.
    """
    d: np.ndarray
    controller_bs: np.ndarray

    def __post_init__(self):
        self.d.setflags(write=False)
        self.controller_bs.setflags(write=False)

    def ris_of_user(self, user: int) -> Optional[int]:
        """Kullanıcının RIS'ini döndürür (yoksa None)"""
        column = np.flatnonzero(self.d[:, user])
        return int(column[0]) if column.size else None


def _deep_merge(base: Dict[str, Any], update: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def resolve_scenario_config(config: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Kullanıcı konfigürasyonunu varsayılanlarla birleştirir

    Alt kanal kümelerinden yalnızca biri verilmişse diğeri tümleyen olarak,
    RIS sahipleri verilmemişse hepsi VSP 0 olarak türetilir.

    Args:
        config: Kısmi senaryo konfigürasyonu

    Returns:
        dict: Tam konfigürasyon
    """
    config = dict(config or {})
    for key, value in config.items():
        if key in _SECTION_KEYS:
            if not isinstance(value, dict):
                raise InvalidConfig(key, "must be a mapping")
            unknown = set(value) - _SECTION_KEYS[key]
            if unknown:
                raise InvalidConfig(f"{key}.{sorted(unknown)[0]}", "unknown key")
        elif key not in DEFAULT_SCENARIO_CONFIG:
            raise InvalidConfig(key, "unknown key")

    merged = _deep_merge(DEFAULT_SCENARIO_CONFIG, config)

    has_reusable = "reusable" in config
    has_dedicated = "dedicated" in config
    if not has_reusable and not has_dedicated and "subchannels" in config:
        num = _as_int(merged["subchannels"], "subchannels", 1)
        merged["reusable"] = list(range(num // 2))
        merged["dedicated"] = list(range(num // 2, num))
    elif has_reusable != has_dedicated:
        num = _as_int(merged["subchannels"], "subchannels", 1)
        given_key = "reusable" if has_reusable else "dedicated"
        other_key = "dedicated" if has_reusable else "reusable"
        given = _as_index_set(merged[given_key], given_key, num, offset=0)
        merged[given_key] = given
        merged[other_key] = [c for c in range(num) if c not in given]

    ris_config = config.get("ris", {})
    if "count" in ris_config and "owner" not in ris_config:
        count = _as_int(merged["ris"]["count"], "ris.count", 0)
        merged["ris"]["owner"] = [0] * count
    return merged


def _as_int(value: Any, field: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        else:
            raise InvalidConfig(field, f"must be an integer, got {value!r}")
    if value < minimum:
        raise InvalidConfig(field, f"must be >= {minimum}, got {value}")
    return int(value)


def _as_float(value: Any, field: str, minimum: Optional[float] = None,
              strict: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float, np.integer, np.floating)):
        raise InvalidConfig(field, f"must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InvalidConfig(field, "must be finite")
    if minimum is not None:
        if strict and value <= minimum:
            raise InvalidConfig(field, f"must be > {minimum}, got {value}")
        if not strict and value < minimum:
            raise InvalidConfig(field, f"must be >= {minimum}, got {value}")
    return value


def _as_index_set(value: Any, field: str, num_subchannels: int, offset: int) -> List[int]:
    """Sayı (ilk n indeks, offset'ten başlayarak) ya da indeks listesi kabul eder"""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        count = _as_int(value, field, 0)
        return list(range(offset, offset + count))
    if not isinstance(value, (list, tuple)):
        raise InvalidConfig(field, "must be a count or a list of subchannel indices")
    indices = [_as_int(c, field, 0) for c in value]
    if len(set(indices)) != len(indices):
        raise InvalidConfig(field, "contains duplicate subchannel indices")
    for c in indices:
        if c >= num_subchannels:
            raise InvalidConfig(field, f"subchannel {c} outside 0..{num_subchannels - 1}")
    return sorted(indices)


def _per_vsp(value: Any, field: str, num_vsps: int, minimum: float) -> np.ndarray:
    if isinstance(value, (list, tuple)):
        if len(value) != num_vsps:
            raise InvalidConfig(field, f"expected {num_vsps} values, got {len(value)}")
        return np.array([_as_float(x, field, minimum) for x in value], dtype=float)
    return np.full(num_vsps, _as_float(value, field, minimum), dtype=float)


def sample_disc(rng: np.random.Generator, center: np.ndarray, radius: float, count: int) -> np.ndarray:
    """
    Disk içinde düzgün dağılımlı noktalar üretir

    Yarıçap sqrt(u) ile ölçeklenir, böylece alan yoğunluğu düzgün olur.
    """
    radii = radius * np.sqrt(rng.uniform(0.0, 1.0, count))
    angles = rng.uniform(0.0, 2.0 * np.pi, count)
    offsets = np.stack([radii * np.cos(angles), radii * np.sin(angles)], axis=-1)
    return np.asarray(center, dtype=float) + offsets


def _explicit_positions(value: Any, field: str, shape: Tuple[int, ...]) -> np.ndarray:
    try:
        array = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise InvalidConfig(field, "positions must be numeric coordinates")
    if array.shape != shape:
        raise InvalidConfig(field, f"expected shape {shape}, got {array.shape}")
    if not np.all(np.isfinite(array)):
        raise InvalidConfig(field, "positions must be finite")
    return array


def _check_inside(points: np.ndarray, center: np.ndarray, radius: float, field: str):
    distances = np.linalg.norm(points.reshape(-1, 2) - center, axis=-1)
    if np.any(distances > radius * (1.0 + 1e-9)):
        raise InvalidConfig(field, f"position outside the VSP disc of radius {radius}")


def build_scenario(config: Optional[Dict[str, Any]] = None) -> Scenario:
    """
    Konfigürasyondan Scenario oluşturur

    Args:
        config: Senaryo konfigürasyonu (JSON uyumlu sözlük, varsayılanlarla birleştirilir)

    Returns:
        Scenario: Doğrulanmış, değişmez senaryo
    """
    cfg = resolve_scenario_config(config)

    num_vsps = _as_int(cfg["vsps"], "vsps", 1)
    bs_per_vsp = _as_int(cfg["bs_per_vsp"], "bs_per_vsp", 1)
    users_per_vsp = _as_int(cfg["users_per_vsp"], "users_per_vsp", 1)
    num_subchannels = _as_int(cfg["subchannels"], "subchannels", 1)
    l_c = _as_int(cfg["l_c"], "l_c", 1)
    seed = _as_int(cfg["seed"], "seed", 0)

    reusable = _as_index_set(cfg["reusable"], "reusable", num_subchannels, offset=0)
    dedicated = _as_index_set(cfg["dedicated"], "dedicated", num_subchannels, offset=len(reusable))
    overlap = set(reusable) & set(dedicated)
    if overlap:
        raise OverlappingSets(overlap)
    if len(reusable) + len(dedicated) != num_subchannels:
        raise InvalidConfig("reusable/dedicated",
                            f"sets must cover all {num_subchannels} subchannels, "
                            f"got {len(reusable)} + {len(dedicated)}")

    ris_cfg = cfg["ris"]
    num_ris = _as_int(ris_cfg["count"], "ris.count", 0)
    elements = _as_int(ris_cfg["elements"], "ris.elements", 1 if num_ris else 0)
    owners = ris_cfg["owner"]
    if not isinstance(owners, (list, tuple)) or len(owners) != num_ris:
        raise InvalidConfig("ris.owner", f"expected a list of {num_ris} VSP indices")
    owners = tuple(_as_int(o, "ris.owner", 0) for o in owners)
    for owner in owners:
        if owner >= num_vsps:
            raise InvalidConfig("ris.owner", f"VSP {owner} does not exist")
    spread = _as_float(ris_cfg["spread"], "ris.spread", 0.0)
    if spread > 1.0:
        raise InvalidConfig("ris.spread", "must lie in [0, 1]")

    geo = cfg["geometry"]
    radius = _as_float(geo["radius_m"], "geometry.radius_m", 0.0, strict=True)
    separation = _as_float(geo["separation_m"], "geometry.separation_m", 0.0)
    beta = _as_float(cfg["channel"]["pathloss_exponent"], "channel.pathloss_exponent", 0.0, strict=True)

    prices_cfg = cfg["prices"]
    prices = PriceBook(
        reused=_as_float(prices_cfg["reused"], "prices.reused", 0.0),
        dedicated=_as_float(prices_cfg["dedicated"], "prices.dedicated", 0.0),
        ris=_as_float(prices_cfg["ris"], "prices.ris", 0.0),
        power=_as_float(prices_cfg["power"], "prices.power", 0.0),
    )
    if prices.dedicated <= prices.reused:
        raise InvalidConfig("prices.dedicated", "dedicated subchannels must be priced above reused ones")

    util_cfg = cfg["utility"]
    phi1 = _as_float(util_cfg["phi1"], "utility.phi1", 0.0)
    phi2 = _as_float(util_cfg["phi2"], "utility.phi2", 0.0)
    profit = _per_vsp(util_cfg["beta_v"], "utility.beta_v", num_vsps, 0.0)

    qos_cfg = cfg["qos"]
    threshold = _per_vsp(qos_cfg["threshold"], "qos.threshold", num_vsps, 0.0)
    penalty = _as_float(qos_cfg["penalty"], "qos.penalty", 0.0)

    units = cfg["units"]
    mode = units["mode"]
    if mode not in UNIT_MODES:
        raise InvalidConfig("units.mode", f"must be one of {UNIT_MODES}, got {mode!r}")

    if mode == "normalized":
        p_max = 1.0
        noise_power = 1.0
        bandwidth = 1.0
        snr = float(db_to_linear(_as_float(units["ref_snr_db"], "units.ref_snr_db")))
        # Hücre kenarında tam güçte medyan doğrudan SNR ≈ ref_snr (|z|² medyanı ln 2)
        ref_gain = snr * noise_power / (p_max * radius ** (-beta) * math.log(2.0))
    else:
        p_max = float(dbm_to_watts(_as_float(units["p_max_dbm"], "units.p_max_dbm")))
        bandwidth = _as_float(units["bandwidth_hz"], "units.bandwidth_hz", 0.0, strict=True)
        noise_power = noise_power_watts(_as_float(units["noise_dbm_per_hz"], "units.noise_dbm_per_hz"),
                                        bandwidth)
        ref_gain = float(db_to_linear(_as_float(units["ref_gain_db"], "units.ref_gain_db")))
        threshold = threshold * bandwidth

    centers = np.array([[v * separation, 0.0] for v in range(num_vsps)], dtype=float)

    rng = np.random.default_rng(seed)
    explicit = geo.get("positions") or {}
    if not isinstance(explicit, dict):
        raise InvalidConfig("geometry.positions", "must be a mapping")
    unknown = set(explicit) - {"bs", "users", "ris"}
    if unknown:
        raise InvalidConfig(f"geometry.positions.{sorted(unknown)[0]}", "unknown key")

    bs_positions = np.empty((num_vsps, bs_per_vsp, 2))
    user_positions = np.empty((num_vsps, users_per_vsp, 2))
    for v in range(num_vsps):
        bs_positions[v] = sample_disc(rng, centers[v], radius, bs_per_vsp)
        user_positions[v] = sample_disc(rng, centers[v], radius, users_per_vsp)
    ris_positions = np.empty((num_ris, 2))
    for j, owner in enumerate(owners):
        ris_positions[j] = sample_disc(rng, centers[owner], spread * radius, 1)[0]

    if "bs" in explicit:
        bs_positions = _explicit_positions(explicit["bs"], "geometry.positions.bs",
                                           (num_vsps, bs_per_vsp, 2))
    if "users" in explicit:
        user_positions = _explicit_positions(explicit["users"], "geometry.positions.users",
                                             (num_vsps, users_per_vsp, 2))
    if "ris" in explicit:
        ris_positions = _explicit_positions(explicit["ris"], "geometry.positions.ris", (num_ris, 2))

    for v in range(num_vsps):
        _check_inside(bs_positions[v], centers[v], radius, "geometry.positions.bs")
        _check_inside(user_positions[v], centers[v], radius, "geometry.positions.users")
    for j, owner in enumerate(owners):
        _check_inside(ris_positions[j], centers[owner], radius, "geometry.positions.ris")

    return Scenario(
        num_vsps=num_vsps,
        bs_per_vsp=bs_per_vsp,
        users_per_vsp=users_per_vsp,
        num_subchannels=num_subchannels,
        reusable_set=tuple(reusable),
        dedicated_set=tuple(dedicated),
        max_users_per_subchannel=l_c,
        num_ris=num_ris,
        elements_per_ris=elements if num_ris else 0,
        ris_owner_vsp=owners,
        vsp_centers=centers,
        vsp_radius=radius,
        bs_positions=bs_positions,
        user_positions=user_positions,
        ris_positions=ris_positions,
        p_max=p_max,
        noise_power=noise_power,
        bandwidth=bandwidth,
        pathloss_exponent=beta,
        ref_gain=ref_gain,
        prices=prices,
        profit_per_rate=profit,
        phi1=phi1,
        phi2=phi2,
        rate_threshold=np.repeat(threshold[:, None], users_per_vsp, axis=1),
        qos_penalty_weight=penalty,
        unit_mode=mode,
        seed=seed,
    )


def fix_ris_association(scenario: Scenario) -> RisAssociation:
    """
    RIS ilişkilendirmesini geometriden belirler

    Her RIS coğrafi olarak en yakın BS tarafından kontrol edilir; sahibi
    VSP'nin her kullanıcısı kendisine en yakın RIS ile ilişkilendirilir. Eşitlikte
    düşük indeks seçilir.
    """
    num_users = scenario.num_users_total
    d = np.zeros((scenario.num_ris, num_users), dtype=np.int8)
    controller = np.zeros(scenario.num_ris, dtype=int)
    if scenario.num_ris == 0:
        return RisAssociation(d=d, controller_bs=controller)

    owners = np.asarray(scenario.ris_owner_vsp)
    controller[:] = np.argmin(cdist(scenario.ris_positions, scenario.all_bs_positions), axis=1)

    user_distance = cdist(scenario.ris_positions, scenario.all_user_positions)
    user_vsp = scenario.user_vsp
    for u in range(num_users):
        candidates = np.flatnonzero(owners == user_vsp[u])
        if candidates.size == 0:
            continue
        d[candidates[np.argmin(user_distance[candidates, u])], u] = 1
    return RisAssociation(d=d, controller_bs=controller)


def topology_graph(scenario: Scenario, assoc: Optional[RisAssociation] = None) -> nx.Graph:
    """
    Yerleşim grafiğini oluşturur

    Düğümler ('bs', v, b), ('user', v, k), ('ris', j); kenarlar kullanıcı-aday BS,
    RIS-kontrol BS ve RIS-ilişkili kullanıcı bağlantılarıdır.
    """
    if assoc is None:
        assoc = fix_ris_association(scenario)

    graph = nx.Graph(name="deployment")
    for v in range(scenario.num_vsps):
        for b in range(scenario.bs_per_vsp):
            graph.add_node(("bs", v, b), kind="bs", vsp=v, pos=tuple(scenario.bs_positions[v, b]))
        for k in range(scenario.users_per_vsp):
            graph.add_node(("user", v, k), kind="user", vsp=v, pos=tuple(scenario.user_positions[v, k]))
            for b in range(scenario.bs_per_vsp):
                distance = float(np.linalg.norm(scenario.user_positions[v, k] - scenario.bs_positions[v, b]))
                graph.add_edge(("user", v, k), ("bs", v, b), kind="candidate", distance=distance)

    for j in range(scenario.num_ris):
        owner = scenario.ris_owner_vsp[j]
        graph.add_node(("ris", j), kind="ris", vsp=owner, pos=tuple(scenario.ris_positions[j]))
        cv, cb = divmod(int(assoc.controller_bs[j]), scenario.bs_per_vsp)
        graph.add_edge(("ris", j), ("bs", cv, cb), kind="control")
        for u in np.flatnonzero(assoc.d[j]):
            v, k = divmod(int(u), scenario.users_per_vsp)
            graph.add_edge(("ris", j), ("user", v, k), kind="reflect")
    return graph


def association_summary(scenario: Scenario, assoc: RisAssociation) -> Sequence[Dict[str, Any]]:
    """RIS başına ilişkilendirme özeti"""
    rows = []
    for j in range(scenario.num_ris):
        users = [divmod(int(u), scenario.users_per_vsp) for u in np.flatnonzero(assoc.d[j])]
        rows.append({"ris": j, "owner": scenario.ris_owner_vsp[j],
                     "controller_bs": int(assoc.controller_bs[j]), "users": users})
    return rows
