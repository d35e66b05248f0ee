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
Tests for interference, SINR, rate and utility evaluation
"""

import numpy as np
import pytest

from ris_spectrum_sharing.core.channel import ChannelRealization, RisPhases, draw_channels, effective_channel
from ris_spectrum_sharing.core.scenario import build_scenario, fix_ris_association
from ris_spectrum_sharing.simulation.phy import (Allocation, check_allocation, evaluate_rewards, interference,
                                                 link_gains, sinr_and_rate, utility_breakdown)


def random_allocation(scenario, rng, phases=None):
    """One (BS, subchannel) or idle per user, random powers within each BS budget"""
    omega = np.zeros(scenario.allocation_shape, dtype=np.int8)
    V, B, K, C = scenario.allocation_shape
    for v in range(V):
        for k in range(K):
            choice = rng.integers(0, B * C + 1)
            if choice:
                b, c = divmod(choice - 1, C)
                omega[v, b, k, c] = 1
    power = rng.uniform(0.1, 1.0, scenario.allocation_shape) * omega
    totals = power.sum(axis=(2, 3), keepdims=True)
    power = np.where(totals > scenario.p_max, power * scenario.p_max / np.maximum(totals, 1e-300), power)
    if phases is None:
        phases = RisPhases(rng.uniform(0.0, 2.0 * np.pi, (scenario.num_ris, scenario.elements_per_ris)))
    return Allocation.from_schedule(omega, power, phases)


def oracle_gain(real, alloc, assoc, v, b, w, k, c):
    s = real.scenario
    return abs(effective_channel(real, alloc.phases, assoc, s.bs_index(v, b), s.user_index(w, k), c)) ** 2


def oracle_interference(real, assoc, alloc, v, b, k, c):
    """Flat summation over every other transmission on subchannel c"""
    s = real.scenario
    V, B, K, _ = s.allocation_shape
    tx = alloc.omega * alloc.power
    total = 0.0
    for u in range(K):
        if u != k:
            total += tx[v, b, u, c] * oracle_gain(real, alloc, assoc, v, b, v, k, c)
    for x in range(B):
        if x != b:
            for u in range(K):
                total += tx[v, x, u, c] * oracle_gain(real, alloc, assoc, v, x, v, k, c)
    if c in s.reusable_set:
        for w in range(V):
            if w != v:
                for x in range(B):
                    for u in range(K):
                        total += tx[w, x, u, c] * oracle_gain(real, alloc, assoc, w, x, v, k, c)
    return total


def oracle_sinr(real, assoc, alloc, v, b, k, c):
    if not alloc.omega[v, b, k, c]:
        return 0.0
    signal = alloc.power[v, b, k, c] * oracle_gain(real, alloc, assoc, v, b, v, k, c)
    return signal / (oracle_interference(real, assoc, alloc, v, b, k, c) + real.scenario.noise_power)


def test_interference_matches_oracle():
    """Test interference and SINR against flat summation on random instances"""
    rng = np.random.default_rng(0)
    for trial in range(20):
        scenario = build_scenario({"vsps": 2, "bs_per_vsp": 2, "users_per_vsp": 2, "subchannels": 2,
                                   "ris": {"count": 1, "elements": 3}, "seed": trial})
        assoc = fix_ris_association(scenario)
        real = draw_channels(scenario, rng)
        alloc = random_allocation(scenario, rng)
        for v, b, k, c in np.ndindex(*scenario.allocation_shape):
            expected = oracle_interference(real, assoc, alloc, v, b, k, c)
            assert interference(real, alloc.phases, assoc, alloc, k, v, b, c) == pytest.approx(expected, rel=1e-10)
            sinr, rate = sinr_and_rate(real, alloc.phases, assoc, alloc, k, v, b, c)
            assert sinr == pytest.approx(oracle_sinr(real, assoc, alloc, v, b, k, c), rel=1e-10)
            assert rate == pytest.approx(np.log2(1.0 + sinr), rel=1e-10)


def test_single_scheduled_user_sees_no_interference(small_scenario, small_realization, small_assoc):
    omega = np.zeros(small_scenario.allocation_shape, dtype=np.int8)
    omega[0, 0, 1, 0] = 1
    alloc = Allocation.from_schedule(omega, omega * 0.5, RisPhases.zeros(small_scenario))
    assert interference(small_realization, alloc.phases, small_assoc, alloc, 1, 0, 0, 0) == 0.0


def test_dedicated_subchannel_blocks_inter_vsp_interference(small_scenario, small_realization, small_assoc):
    """Test that the inter-VSP term is gated by the reuse flag"""
    phases = RisPhases.zeros(small_scenario)
    dedicated = np.zeros(small_scenario.allocation_shape, dtype=np.int8)
    dedicated[0, 0, 0, 1] = 1
    dedicated[1, 0, 0, 1] = 1
    alloc = Allocation.from_schedule(dedicated, dedicated * 1.0, phases)
    assert interference(small_realization, phases, small_assoc, alloc, 0, 0, 0, 1) == 0.0

    reused = np.zeros(small_scenario.allocation_shape, dtype=np.int8)
    reused[0, 0, 0, 0] = 1
    reused[1, 0, 0, 0] = 1
    alloc = Allocation.from_schedule(reused, reused * 1.0, phases)
    assert interference(small_realization, phases, small_assoc, alloc, 0, 0, 0, 0) > 0.0


def test_sinr_direct_substitution():
    """Test omega=1, p=4, |h|^2=1, no interference, unit noise"""
    scenario = build_scenario({"vsps": 1, "users_per_vsp": 1, "subchannels": 1, "ris": {"count": 0}})
    real = ChannelRealization(scenario, np.ones((1, 1, 1), dtype=complex),
                              np.zeros((1, 0, 1, 0), dtype=complex), np.zeros((0, 1, 1, 0), dtype=complex))
    assoc = fix_ris_association(scenario)
    omega = np.ones(scenario.allocation_shape, dtype=np.int8)
    alloc = Allocation.from_schedule(omega, 4.0 * omega, RisPhases.zeros(scenario))
    sinr, rate = sinr_and_rate(real, alloc.phases, assoc, alloc, 0, 0, 0, 0)
    assert sinr == pytest.approx(4.0)
    assert rate == pytest.approx(np.log2(5.0))

    idle = Allocation.empty(scenario)
    assert sinr_and_rate(real, idle.phases, assoc, idle, 0, 0, 0, 0) == (0.0, 0.0)


def test_cost_direct_substitution(small_scenario, small_realization, small_assoc):
    """Test one reused + one dedicated subchannel, one RIS and total power 2"""
    omega = np.zeros(small_scenario.allocation_shape, dtype=np.int8)
    omega[0, 0, 0, 0] = 1
    omega[0, 0, 1, 1] = 1
    alloc = Allocation.from_schedule(omega, omega * 1.0, RisPhases.zeros(small_scenario))
    breakdown = utility_breakdown(small_scenario, small_realization, alloc.phases, small_assoc, alloc)
    cost = breakdown.spectrum_cost + breakdown.ris_cost + breakdown.power_cost
    assert cost[0] == pytest.approx(1.2)
    assert breakdown.num_reused[0] == 1
    assert breakdown.num_dedicated[0] == 1
    assert breakdown.num_ris[0] == 1


def test_empty_allocation_breakdown(small_scenario, small_realization, small_assoc):
    alloc = Allocation.empty(small_scenario)
    breakdown = utility_breakdown(small_scenario, small_realization, alloc.phases, small_assoc, alloc)
    assert np.all(breakdown.revenue == 0.0)
    assert np.all(breakdown.spectrum_cost == 0.0)
    assert np.all(breakdown.power_cost == 0.0)
    assert np.allclose(breakdown.ris_cost, [0.3, 0.0])
    assert breakdown.qos_penalty == pytest.approx(50.0 * 0.5 * 4)
    assert breakdown.reward == pytest.approx(-0.3 - 100.0)


def test_utility_matches_rate_composition():
    """Test that sum utility recomposes from per-link SINR and rates"""
    rng = np.random.default_rng(1)
    for trial in range(10):
        scenario = build_scenario({"vsps": 2, "bs_per_vsp": 1, "users_per_vsp": 3, "subchannels": 4,
                                   "ris": {"count": 1, "elements": 4}, "seed": trial})
        assoc = fix_ris_association(scenario)
        real = draw_channels(scenario, rng)
        alloc = random_allocation(scenario, rng)
        breakdown = utility_breakdown(scenario, real, alloc.phases, assoc, alloc)

        expected = 0.0
        penalty = 0.0
        for v in range(scenario.num_vsps):
            rates = np.zeros(scenario.users_per_vsp)
            for b, k, c in np.ndindex(scenario.bs_per_vsp, scenario.users_per_vsp, scenario.num_subchannels):
                rates[k] += sinr_and_rate(real, alloc.phases, assoc, alloc, k, v, b, c)[1]
            used = set(np.argwhere(alloc.omega[v])[:, 2])
            spectrum = sum(0.2 if c in scenario.reusable_set else 0.5 for c in used)
            cost = spectrum + 0.3 * scenario.ris_per_vsp[v] + 0.1 * alloc.power[v].sum()
            expected += rates.sum() - cost
            penalty += 50.0 * np.maximum(0.0, 0.5 - rates).sum()
        assert breakdown.sum_utility == pytest.approx(expected, rel=1e-10, abs=1e-10)
        assert breakdown.qos_penalty == pytest.approx(penalty, rel=1e-10, abs=1e-10)


def test_power_monotonicity(small_scenario, small_realization, small_assoc):
    """Test that raising one user's power helps it and never helps co-channel users"""
    omega = np.zeros(small_scenario.allocation_shape, dtype=np.int8)
    omega[0, 0, 0, 0] = 1
    omega[0, 0, 1, 0] = 1
    omega[1, 0, 0, 0] = 1
    phases = RisPhases.zeros(small_scenario)
    low = Allocation.from_schedule(omega, omega * 0.3, phases)
    high_power = low.power.copy()
    high_power[0, 0, 0, 0] = 0.6
    high = Allocation.from_schedule(omega, high_power, phases)

    def sinr(alloc, v, k):
        return sinr_and_rate(small_realization, phases, small_assoc, alloc, k, v, 0, 0)[0]

    assert sinr(high, 0, 0) > sinr(low, 0, 0)
    assert sinr(high, 0, 1) <= sinr(low, 0, 1)
    assert sinr(high, 1, 0) <= sinr(low, 1, 0)


def test_batched_rewards_match_single(small_scenario, small_realization, small_assoc):
    """Test batch evaluation against one-at-a-time breakdowns"""
    rng = np.random.default_rng(2)
    phases = RisPhases.zeros(small_scenario)
    allocs = [random_allocation(small_scenario, rng, phases) for _ in range(6)]
    gains = link_gains(small_realization, phases, small_assoc)
    rewards = evaluate_rewards(small_scenario, gains, np.stack([a.omega for a in allocs]),
                               np.stack([a.power for a in allocs]))
    for alloc, reward in zip(allocs, rewards):
        single = utility_breakdown(small_scenario, small_realization, phases, small_assoc, alloc).reward
        assert reward == pytest.approx(single, rel=1e-12, abs=1e-12)


def test_check_allocation(small_scenario):
    """Test that the checker names each violated constraint"""
    phases = RisPhases.zeros(small_scenario)
    assert check_allocation(small_scenario, Allocation.empty(small_scenario)) == []

    omega = np.zeros(small_scenario.allocation_shape, dtype=np.int8)
    omega[0, 0, 0, 0] = 1
    omega[0, 0, 0, 1] = 1
    alloc = Allocation.from_schedule(omega, omega * 0.8, phases)
    problems = check_allocation(small_scenario, alloc)
    assert any("several" in p for p in problems)
    assert any("power" in p and "exceeds" in p for p in problems)

    power = np.zeros(small_scenario.allocation_shape)
    power[1, 0, 1, 1] = 0.5
    alloc = Allocation(omega=np.zeros_like(omega), phi=np.zeros(omega.shape[:3], dtype=np.int8),
                       power=power, phases=phases)
    assert "power on unscheduled link" in check_allocation(small_scenario, alloc)


def test_subchannel_capacity_violation():
    scenario = build_scenario({"vsps": 1, "users_per_vsp": 3, "subchannels": 1, "l_c": 2, "ris": {"count": 0}})
    omega = np.ones(scenario.allocation_shape, dtype=np.int8)
    alloc = Allocation.from_schedule(omega, omega * 0.1, RisPhases.zeros(scenario))
    assert any("carries 3 users" in p for p in check_allocation(scenario, alloc))


def test_removing_a_link_never_lowers_other_rates():
    """Test that switching off one scheduled link leaves every other user at least as well off"""
    rng = np.random.default_rng(3)
    for trial in range(20):
        scenario = build_scenario({"vsps": 2, "bs_per_vsp": 2, "users_per_vsp": 3, "subchannels": 2,
                                   "ris": {"count": 1, "elements": 3}, "seed": 40 + trial})
        assoc = fix_ris_association(scenario)
        real = draw_channels(scenario, rng)
        alloc = random_allocation(scenario, rng)
        active = np.argwhere(alloc.omega)
        if len(active) == 0:
            continue
        v, b, k, c = active[rng.integers(len(active))]
        omega = alloc.omega.copy()
        omega[v, b, k, c] = 0
        reduced = Allocation.from_schedule(omega, alloc.power, alloc.phases)

        before = utility_breakdown(scenario, real, alloc.phases, assoc, alloc).rates
        after = utility_breakdown(scenario, real, alloc.phases, assoc, reduced).rates
        others = np.ones(before.shape, dtype=bool)
        others[v, k] = False
        assert np.all(after[others] >= before[others] - 1e-12)


def test_qos_penalty_zero_exactly_when_all_users_meet_threshold():
    rng = np.random.default_rng(4)
    outcomes = set()
    for trial in range(40):
        threshold = [0.0, 0.05, 0.5, 2.0][trial % 4]
        scenario = build_scenario({"vsps": 2, "bs_per_vsp": 1, "users_per_vsp": 2, "subchannels": 3,
                                   "qos": {"threshold": threshold, "penalty": 50.0},
                                   "ris": {"count": 1, "elements": 4}, "seed": trial})
        assoc = fix_ris_association(scenario)
        real = draw_channels(scenario, rng)
        alloc = random_allocation(scenario, rng)
        breakdown = utility_breakdown(scenario, real, alloc.phases, assoc, alloc)
        satisfied = bool(np.all(breakdown.rates >= scenario.rate_threshold))
        assert (breakdown.qos_penalty == 0.0) == satisfied
        outcomes.add(satisfied)
    assert outcomes == {True, False}


def test_dedicated_rates_ignore_other_vsp_allocation():
    """Test that a VSP's dedicated-subchannel SINR does not depend on the other VSP's schedule"""
    rng = np.random.default_rng(5)
    scenario = build_scenario({"vsps": 2, "bs_per_vsp": 2, "users_per_vsp": 3, "subchannels": 3,
                               "reusable": [0], "dedicated": [1, 2], "l_c": 3,
                               "ris": {"count": 1, "elements": 4}, "seed": 9})
    assoc = fix_ris_association(scenario)
    real = draw_channels(scenario, rng)
    base = random_allocation(scenario, rng)
    reference = utility_breakdown(scenario, real, base.phases, assoc, base).sinr[0][..., 1:]

    for _ in range(50):
        other = random_allocation(scenario, rng, base.phases)
        omega = base.omega.copy()
        power = base.power.copy()
        omega[1] = other.omega[1]
        power[1] = other.power[1]
        alloc = Allocation.from_schedule(omega, power, base.phases)
        sinr = utility_breakdown(scenario, real, base.phases, assoc, alloc).sinr[0][..., 1:]
        assert sinr == pytest.approx(reference, rel=1e-12, abs=1e-15)
