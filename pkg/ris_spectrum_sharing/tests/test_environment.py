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
Tests for action projection, state encoding and environment stepping
"""

import numpy as np
import pytest

from ris_spectrum_sharing.core.channel import ChannelRealization
from ris_spectrum_sharing.core.scenario import build_scenario
from ris_spectrum_sharing.exceptions import DimensionMismatch, NotReset
from ris_spectrum_sharing.simulation.environment import (SpectrumSharingEnv, decode_action, encode_action,
                                                         project_action, state_dim)
from ris_spectrum_sharing.simulation.phy import Allocation, check_allocation, utility_breakdown


def schedule_index(scenario, v, b, k, c):
    return int(np.ravel_multi_index((v, b, k, c), scenario.allocation_shape))


def power_index(scenario, v, b, k, c):
    return int(np.prod(scenario.allocation_shape)) + schedule_index(scenario, v, b, k, c)


def test_threshold_mapping(small_scenario, small_assoc):
    """Test that score 0.7 schedules and score 0.3 does not"""
    raw = -np.ones(small_scenario.action_dim)
    raw[schedule_index(small_scenario, 0, 0, 0, 0)] = 2 * 0.7 - 1
    raw[schedule_index(small_scenario, 0, 0, 1, 0)] = 2 * 0.3 - 1
    alloc = project_action(small_scenario, small_assoc, raw)
    assert alloc.omega[0, 0, 0, 0] == 1
    assert alloc.omega[0, 0, 1, 0] == 0
    assert alloc.phi[0, 0, 0] == 1


def test_one_link_per_user(small_scenario, small_assoc):
    """Test that the highest-valued (b, c) wins and ties go to the lower index"""
    raw = -np.ones(small_scenario.action_dim)
    raw[schedule_index(small_scenario, 0, 0, 0, 0)] = 0.4
    raw[schedule_index(small_scenario, 0, 0, 0, 1)] = 0.9
    raw[schedule_index(small_scenario, 1, 0, 1, 0)] = 0.5
    raw[schedule_index(small_scenario, 1, 0, 1, 1)] = 0.5
    alloc = project_action(small_scenario, small_assoc, raw)
    assert list(alloc.omega[0, 0, 0]) == [0, 1]
    assert list(alloc.omega[1, 0, 1]) == [1, 0]


def test_subchannel_capacity_keeps_best_users():
    scenario = build_scenario({"vsps": 1, "users_per_vsp": 3, "subchannels": 1, "l_c": 2, "ris": {"count": 0}})
    raw = -np.ones(scenario.action_dim)
    for k, value in enumerate([0.2, 0.8, 0.5]):
        raw[schedule_index(scenario, 0, 0, k, 0)] = value
    alloc = project_action(scenario, None, raw)
    assert list(alloc.omega[0, 0, :, 0]) == [0, 1, 1]


def test_power_rescaled_to_budget(small_scenario, small_assoc):
    """Test that fractions summing to 1.6 P_max are scaled by 1/1.6"""
    raw = -np.ones(small_scenario.action_dim)
    for k, c in ((0, 0), (1, 1)):
        raw[schedule_index(small_scenario, 0, 0, k, c)] = 1.0
        raw[power_index(small_scenario, 0, 0, k, c)] = 2 * 0.8 - 1
    alloc = project_action(small_scenario, small_assoc, raw)
    assert alloc.power[0, 0, 0, 0] == pytest.approx(0.5 * small_scenario.p_max)
    assert alloc.power[0, 0, 1, 1] == pytest.approx(0.5 * small_scenario.p_max)
    assert alloc.power[0].sum() == pytest.approx(small_scenario.p_max)


def test_phase_mapping(small_scenario, small_assoc):
    raw = -np.ones(small_scenario.action_dim)
    raw[-4:] = [-1.0, -0.5, 0.0, 0.5]
    alloc = project_action(small_scenario, small_assoc, raw)
    assert np.allclose(alloc.phases.theta, [[0.0, 0.5 * np.pi, np.pi, 1.5 * np.pi]])
    raw[-1] = 1.0
    assert project_action(small_scenario, small_assoc, raw).phases.theta[0, -1] == 0.0


def test_projection_fuzz_feasible_and_idempotent():
    """Test feasibility and idempotence of the projection on random raw actions"""
    rng = np.random.default_rng(0)
    for trial in range(20):
        scenario = build_scenario({"vsps": 2, "bs_per_vsp": int(rng.integers(1, 3)),
                                   "users_per_vsp": int(rng.integers(1, 5)), "subchannels": 4,
                                   "l_c": int(rng.integers(1, 3)), "ris": {"count": 1, "elements": 3},
                                   "seed": trial})
        for _ in range(250):
            raw = rng.uniform(-1.2, 1.2, scenario.action_dim)
            alloc = project_action(scenario, None, raw)
            assert check_allocation(scenario, alloc) == []
            again = project_action(scenario, None, encode_action(scenario, alloc))
            assert np.array_equal(again.omega, alloc.omega)
            assert np.array_equal(again.phi, alloc.phi)
            assert np.allclose(again.power, alloc.power, rtol=1e-12, atol=1e-12)
            assert np.allclose(again.phases.theta, alloc.phases.theta, rtol=0, atol=1e-12)


def test_feasible_point_is_fixed(small_scenario, small_assoc):
    omega = np.zeros(small_scenario.allocation_shape, dtype=np.int8)
    omega[0, 0, 0, 1] = 1
    omega[1, 0, 1, 0] = 1
    alloc = Allocation.from_schedule(omega, omega * 0.4 * small_scenario.p_max, Allocation.empty(small_scenario).phases)
    projected = project_action(small_scenario, small_assoc, encode_action(small_scenario, alloc))
    assert np.array_equal(projected.omega, omega)
    assert np.allclose(projected.power, alloc.power)
    decoded = decode_action(small_scenario, encode_action(small_scenario, alloc))
    assert np.array_equal(decoded.omega, omega)


def test_action_dimension_checked(small_scenario, small_assoc):
    with pytest.raises(DimensionMismatch):
        project_action(small_scenario, small_assoc, np.zeros(small_scenario.action_dim + 1))


def test_state_dimension_formula():
    """Test the closed-form state size for V=2, B=1, K=4, C=4, J=1, M=8"""
    scenario = build_scenario({"users_per_vsp": 4, "ris": {"count": 1, "elements": 8}})
    channels = 2 * 8 * 4 + 2 * 1 * 4 * 8 + 1 * 8 * 4 * 8
    action = 2 * 2 * 1 * 4 * 4 + 8
    assert scenario.action_dim == action
    assert state_dim(scenario) == 2 * channels + 8 + action
    env = SpectrumSharingEnv(scenario, seed=0)
    assert env.reset().shape == (state_dim(scenario),)


def test_reset_is_deterministic(small_scenario):
    a = SpectrumSharingEnv(small_scenario, seed=4).reset()
    b = SpectrumSharingEnv(small_scenario, seed=4).reset()
    assert np.array_equal(a, b)
    env = SpectrumSharingEnv(small_scenario, seed=99)
    assert np.array_equal(env.reset(seed=4), a)


def test_reset_state_layout(small_scenario):
    """Test zero rates and the empty previous action after reset"""
    env = SpectrumSharingEnv(small_scenario, seed=1)
    state = env.reset()
    num_channel = state_dim(small_scenario) - small_scenario.num_users_total - small_scenario.action_dim
    rates = state[num_channel:num_channel + small_scenario.num_users_total]
    previous = state[num_channel + small_scenario.num_users_total:]
    assert np.all(rates == 0.0)
    assert np.array_equal(previous, encode_action(small_scenario, Allocation.empty(small_scenario)))
    assert np.all(np.isfinite(state))


def test_step_before_reset_raises(small_scenario):
    env = SpectrumSharingEnv(small_scenario, seed=0)
    with pytest.raises(NotReset):
        env.step(np.zeros(small_scenario.action_dim))


def test_empty_action_reward(small_scenario):
    """Test the reward of the empty allocation: RIS lease and full QoS penalty"""
    env = SpectrumSharingEnv(small_scenario, seed=2)
    env.reset()
    _, reward, done, info = env.step(-np.ones(small_scenario.action_dim))
    assert not done
    assert reward == pytest.approx(-0.3 - 50.0 * 0.5 * small_scenario.num_users_total)
    assert info.sum_utility == pytest.approx(-0.3)


def test_reward_without_penalty_is_sum_utility(small_config):
    small_config["qos"] = {"penalty": 0.0}
    scenario = build_scenario(small_config)
    env = SpectrumSharingEnv(scenario, seed=3)
    env.reset()
    _, reward, _, info = env.step(np.random.default_rng(0).uniform(-1, 1, scenario.action_dim))
    assert reward == info.sum_utility


def test_next_state_carries_executed_action(small_scenario):
    """Test that the previous-action slice decodes to the executed allocation"""
    env = SpectrumSharingEnv(small_scenario, seed=5)
    state = env.reset()
    rng = np.random.default_rng(6)
    num_channel = state_dim(small_scenario) - small_scenario.num_users_total - small_scenario.action_dim
    for _ in range(5):
        next_state, _, _, info = env.step(rng.uniform(-1, 1, small_scenario.action_dim))
        assert np.array_equal(next_state[:num_channel], state[:num_channel])
        assert np.allclose(next_state[num_channel:num_channel + small_scenario.num_users_total],
                           info.rates.ravel() / small_scenario.bandwidth)
        decoded = decode_action(small_scenario, next_state[-small_scenario.action_dim:])
        assert np.array_equal(decoded.omega, env.last_allocation.omega)
        assert np.allclose(decoded.power, env.last_allocation.power, rtol=1e-12, atol=1e-15)
        state = next_state


def test_episode_ends_after_length(small_scenario):
    env = SpectrumSharingEnv(small_scenario, episode_length=3, seed=0)
    env.reset()
    flags = [env.step(np.zeros(small_scenario.action_dim))[2] for _ in range(3)]
    assert flags == [False, False, True]
    with pytest.raises(NotReset):
        env.step(np.zeros(small_scenario.action_dim))
    env.reset()
    assert env.stats == {"episodes": 2, "steps": 3}


def test_channels_frozen_within_episode_and_redrawn_at_reset(small_scenario):
    env = SpectrumSharingEnv(small_scenario, seed=8)
    env.reset()
    first = env.realization.direct.copy()
    env.step(np.zeros(small_scenario.action_dim))
    assert np.array_equal(env.realization.direct, first)
    env.reset()
    assert not np.array_equal(env.realization.direct, first)


def test_user_relabeling_symmetry(small_realization, small_assoc):
    """Test that swapping two users of a VSP together with their channels keeps the reward"""
    scenario = small_realization.scenario
    rng = np.random.default_rng(7)
    raw = rng.uniform(-1, 1, scenario.action_dim)
    alloc = project_action(scenario, small_assoc, raw)
    base = utility_breakdown(scenario, small_realization, alloc.phases, small_assoc, alloc).reward

    perm = np.array([1, 0, 3, 2])
    swapped_real = ChannelRealization(scenario, small_realization.direct[:, perm].copy(),
                                      small_realization.bs_ris.copy(), small_realization.ris_user[:, perm].copy())
    swapped_alloc = Allocation.from_schedule(alloc.omega[:, :, [1, 0]], alloc.power[:, :, [1, 0]], alloc.phases)
    swapped = utility_breakdown(scenario, swapped_real, alloc.phases, small_assoc, swapped_alloc).reward
    assert swapped == pytest.approx(base, rel=1e-12)
