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
SAC Ajanı
=========

Sıkıştırılmış Gauss politika, ikiz kritikler, entropi sıcaklığı α'nın
otomatik ayarı ve gecikmeli politika güncellemeleri.
"""

from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .common import AgentHyperparameters, mse_head, soft_bellman_targets
from .network import MLP, Adam, GaussianPolicy, adam_step


class SacAgent:
    """
    Soft actor-critic öğrenicisi

    Hedef entropi -|A|; α log-parametrelidir.
    """

    kind = "sac"

    def __init__(self, state_dim: int, action_dim: int,
                 hyperparameters: Optional[AgentHyperparameters] = None,
                 rng: Optional[np.random.Generator] = None, total_steps: int = 0,
                 action_rng: Optional[np.random.Generator] = None):
        self.hp = hyperparameters or AgentHyperparameters()
        self.state_dim = int(state_dim)
        self.action_dim = int(action_dim)
        self.total_steps = int(total_steps)
        rng = rng if rng is not None else np.random.default_rng()
        self.action_rng = action_rng if action_rng is not None else np.random.default_rng()

        self.policy = GaussianPolicy(state_dim, action_dim, self.hp.hidden, rng=rng)
        num_critics = 2 if self.hp.twin_critics else 1
        self.critics: List[MLP] = [MLP([state_dim + action_dim, *self.hp.hidden, 1], "linear", rng=rng)
                                   for _ in range(num_critics)]
        self.target_critics = [critic.copy() for critic in self.critics]
        self.policy_opt = Adam(self.policy.net.num_parameters, lr=self.hp.actor_lr)
        self.critic_opts = [Adam(critic.num_parameters, lr=self.hp.critic_lr) for critic in self.critics]

        self.target_entropy = -float(action_dim)
        self.log_alpha = np.array([np.log(self.hp.init_alpha)]) if self.hp.init_alpha > 0 else None
        self.alpha_opt = Adam(1, lr=self.hp.alpha_lr)

        self.critic_updates = 0
        self.last_target_details: Optional[Dict[str, np.ndarray]] = None
        self.stats = {
            "updates": 0,
            "policy_updates": 0,
            "actions": 0
        }

    @property
    def alpha(self) -> float:
        if self.log_alpha is None:
            return 0.0
        return float(np.exp(self.log_alpha[0]))

    def anneal(self, step: int):
        """SAC'ta keşif politikanın kendisinden gelir"""

    def select(self, state: np.ndarray, deterministic: bool = False) -> Tuple[np.ndarray, float]:
        """
        Aksiyon örnekler

        Returns:
            tuple: (ham aksiyon, log π)
        """
        self.stats["actions"] += 1
        action, log_prob, _ = self.policy.sample(state, self.action_rng, deterministic)
        return action[0], float(log_prob[0])

    def _q_values(self, networks: List[MLP], states: np.ndarray, actions: np.ndarray):
        inputs = np.hstack([states, actions])
        return [net.forward_with_cache(inputs) for net in networks]

    def critic_targets(self, batch: Dict[str, np.ndarray]) -> np.ndarray:
        """y = r + γ(min_i Q'_i(s', a') - α log π(a'|s')), a' politikadan taze örnek"""
        next_actions, next_log_prob, _ = self.policy.sample(batch["next_states"], self.action_rng)
        next_q = [out[:, 0] for out, _ in self._q_values(self.target_critics, batch["next_states"],
                                                          next_actions)]
        targets = soft_bellman_targets(batch["rewards"], batch["dones"], next_q, next_log_prob,
                                       self.alpha, self.hp.gamma, self.hp.mask_terminal)
        self.last_target_details = {
            "next_actions": next_actions,
            "next_log_prob": next_log_prob,
            "next_q": np.stack(next_q),
            "min_q": np.min(np.stack(next_q), axis=0),
            "targets": targets,
        }
        return targets

    def update(self, batch: Dict[str, np.ndarray]) -> Tuple[List[float], Optional[float], Optional[float]]:
        """
        Bir kritik güncellemesi; her policy_delay kritik güncellemesinde bir politika
        ve sıcaklık güncellemesi

        Returns:
            tuple: (kritik kayıpları, politika kaybı ya da None, α kaybı ya da None)
        """
        states = batch["states"]
        targets = self.critic_targets(batch)

        q_losses = []
        for critic, opt, (out, cache) in zip(self.critics, self.critic_opts,
                                             self._q_values(self.critics, states, batch["actions"])):
            loss, grad_out = mse_head(targets)(out)
            grads, _ = critic.backward(cache, grad_out)
            adam_step(opt, critic, grads)
            q_losses.append(float(loss))

        self.critic_updates += 1
        policy_loss = None
        alpha_loss = None
        if self.critic_updates % self.hp.policy_delay == 0:
            policy_loss, alpha_loss = self._update_policy(states)

        for target, critic in zip(self.target_critics, self.critics):
            target.soft_update(critic, self.hp.tau)
        self.stats["updates"] += 1
        return q_losses, policy_loss, alpha_loss

    def policy_loss_and_gradient(self, states: np.ndarray, noise: np.ndarray):
        """
        E[α log π(a|s) - min_i Q_i(s, a)] ve politika parametre gradyanı

        Returns:
            tuple: (kayıp, düz gradyan, log π)
        """
        batch_size = len(states)
        actions, log_prob, cache = self.policy.forward(states, noise)
        q_outputs = self._q_values(self.critics, states, actions)
        q_stack = np.stack([out[:, 0] for out, _ in q_outputs])
        chosen = np.argmin(q_stack, axis=0)
        q_min = q_stack[chosen, np.arange(batch_size)]
        alpha = self.alpha
        loss = float(np.mean(alpha * log_prob - q_min))

        grad_action = np.zeros_like(actions)
        for i, (critic, (out, q_cache)) in enumerate(zip(self.critics, q_outputs)):
            mask = (chosen == i).astype(float)[:, None]
            _, grad_in = critic.backward(q_cache, -mask / batch_size)
            grad_action += grad_in[:, self.state_dim:]
        grads = self.policy.backward(cache, grad_action, np.full(batch_size, alpha / batch_size))
        return loss, grads, log_prob

    def _update_policy(self, states: np.ndarray) -> Tuple[float, Optional[float]]:
        noise = self.action_rng.standard_normal((len(states), self.action_dim))
        loss, grads, log_prob = self.policy_loss_and_gradient(states, noise)
        adam_step(self.policy_opt, self.policy.net, grads)
        self.stats["policy_updates"] += 1

        alpha_loss = None
        if self.hp.auto_entropy and self.log_alpha is not None:
            entropy_gap = log_prob + self.target_entropy
            alpha_loss = float(-np.mean(self.alpha * entropy_gap))
            grad_log_alpha = np.array([-self.alpha * np.mean(entropy_gap)])
            self.log_alpha = self.alpha_opt.step(self.log_alpha, grad_log_alpha)
        return loss, alpha_loss

    def state_dict(self) -> Dict[str, Any]:
        return {
            "policy": self.policy.net.get_flat(),
            "critics": [c.get_flat() for c in self.critics],
            "target_critics": [c.get_flat() for c in self.target_critics],
            "policy_opt": self.policy_opt.state_dict(),
            "critic_opts": [opt.state_dict() for opt in self.critic_opts],
            "alpha_opt": self.alpha_opt.state_dict(),
            "log_alpha": None if self.log_alpha is None else self.log_alpha.copy(),
            "critic_updates": self.critic_updates,
            "action_rng": self.action_rng.bit_generator.state,
            "stats": dict(self.stats),
        }

    def load_state_dict(self, state: Dict[str, Any]):
        self.policy.net.set_flat(state["policy"])
        for net, flat in zip(self.critics, state["critics"]):
            net.set_flat(flat)
        for net, flat in zip(self.target_critics, state["target_critics"]):
            net.set_flat(flat)
        self.policy_opt.load_state_dict(state["policy_opt"])
        for opt, opt_state in zip(self.critic_opts, state["critic_opts"]):
            opt.load_state_dict(opt_state)
        self.alpha_opt.load_state_dict(state["alpha_opt"])
        self.log_alpha = None if state["log_alpha"] is None else np.array(state["log_alpha"], dtype=float)
        self.critic_updates = int(state["critic_updates"])
        self.action_rng.bit_generator.state = state["action_rng"]
        self.stats.update(state["stats"])
