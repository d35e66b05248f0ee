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
DDPG Ajanı
==========

Deterministik aktör, tek kritik, hedef ağlar ve Polyak güncellemeleri.
Keşif için tavlanan toplamsal Gauss gürültüsü kullanılır.
"""

from typing import Any, Dict, Optional, Tuple

import numpy as np

from .common import AgentHyperparameters, mse_head, soft_bellman_targets
from .network import MLP, Adam, adam_step


class DdpgAgent:
    """
    DDPG öğrenicisi

    Aktör tanh çıkışlı, kritik Q(s, a) doğrusal çıkışlıdır.
    """

    kind = "ddpg"

    def __init__(self, state_dim: int, action_dim: int,
                 hyperparameters: Optional[AgentHyperparameters] = None,
                 rng: Optional[np.random.Generator] = None, total_steps: int = 0,
                 action_rng: Optional[np.random.Generator] = None):
        """
        Args:
            state_dim: Durum boyutu
            action_dim: Aksiyon boyutu
            hyperparameters: Hiperparametreler
            rng: Ağ başlatma kaynağı
            total_steps: Eğitim adımı T (gürültü tavlaması için)
            action_rng: Keşif gürültüsü kaynağı
        """
        self.hp = hyperparameters or AgentHyperparameters()
        self.state_dim = int(state_dim)
        self.action_dim = int(action_dim)
        self.total_steps = int(total_steps)
        rng = rng if rng is not None else np.random.default_rng()
        self.action_rng = action_rng if action_rng is not None else np.random.default_rng()

        self.actor = MLP([state_dim, *self.hp.hidden, action_dim], "tanh", rng=rng)
        self.critic = MLP([state_dim + action_dim, *self.hp.hidden, 1], "linear", rng=rng)
        self.target_actor = self.actor.copy()
        self.target_critic = self.critic.copy()
        self.actor_opt = Adam(self.actor.num_parameters, lr=self.hp.actor_lr)
        self.critic_opt = Adam(self.critic.num_parameters, lr=self.hp.critic_lr)

        self.exploration_noise = self.hp.noise_start
        self.last_critic_targets: Optional[np.ndarray] = None
        self.stats = {
            "updates": 0,
            "actions": 0
        }

    def noise_scale(self, step: int) -> float:
        """σ_expl: ilk T/2 adımda noise_start → noise_end doğrusal"""
        horizon = 0.5 * self.total_steps
        if horizon <= 0:
            return self.hp.noise_start
        fraction = min(1.0, max(0.0, step / horizon))
        return self.hp.noise_start + (self.hp.noise_end - self.hp.noise_start) * fraction

    def anneal(self, step: int):
        self.exploration_noise = self.noise_scale(step)

    def select(self, state: np.ndarray, explore: bool = True) -> np.ndarray:
        """
        Aksiyon seçer

        Args:
            state: Durum vektörü
            explore: Gürültü eklensin mi

        Returns:
            np.ndarray: [-1, 1] aralığında ham aksiyon
        """
        self.stats["actions"] += 1
        action = self.actor.forward(state)
        if explore and self.exploration_noise > 0.0:
            action = action + self.exploration_noise * self.action_rng.standard_normal(action.shape)
        return np.clip(action, -1.0, 1.0)

    def critic_targets(self, batch: Dict[str, np.ndarray]) -> np.ndarray:
        """r + γ·Q'(s', π'(s'))"""
        next_actions = self.target_actor.forward(batch["next_states"])
        next_q = self.target_critic.forward(np.hstack([batch["next_states"], next_actions]))
        return soft_bellman_targets(batch["rewards"], batch["dones"], [next_q], None, 0.0,
                                    self.hp.gamma, self.hp.mask_terminal)

    def update(self, batch: Dict[str, np.ndarray]) -> Tuple[float, float]:
        """
        Kritik ve aktör için birer Adam adımı, ardından Polyak güncellemesi

        Returns:
            tuple: (critic_loss, actor_loss)
        """
        states = batch["states"]
        targets = self.critic_targets(batch)
        self.last_critic_targets = targets

        critic_input = np.hstack([states, batch["actions"]])
        out, cache = self.critic.forward_with_cache(critic_input)
        critic_loss, grad_out = mse_head(targets)(out)
        grads, _ = self.critic.backward(cache, grad_out)
        adam_step(self.critic_opt, self.critic, grads)

        actions, actor_cache = self.actor.forward_with_cache(states)
        q, q_cache = self.critic.forward_with_cache(np.hstack([states, actions]))
        actor_loss = float(-np.mean(q))
        _, grad_in = self.critic.backward(q_cache, np.full_like(q, -1.0 / len(q)))
        actor_grads, _ = self.actor.backward(actor_cache, grad_in[:, self.state_dim:])
        adam_step(self.actor_opt, self.actor, actor_grads)

        self.target_actor.soft_update(self.actor, self.hp.tau)
        self.target_critic.soft_update(self.critic, self.hp.tau)
        self.stats["updates"] += 1
        return float(critic_loss), actor_loss

    def state_dict(self) -> Dict[str, Any]:
        return {
            "actor": self.actor.get_flat(),
            "critic": self.critic.get_flat(),
            "target_actor": self.target_actor.get_flat(),
            "target_critic": self.target_critic.get_flat(),
            "actor_opt": self.actor_opt.state_dict(),
            "critic_opt": self.critic_opt.state_dict(),
            "exploration_noise": self.exploration_noise,
            "action_rng": self.action_rng.bit_generator.state,
            "stats": dict(self.stats),
        }

    def load_state_dict(self, state: Dict[str, Any]):
        self.actor.set_flat(state["actor"])
        self.critic.set_flat(state["critic"])
        self.target_actor.set_flat(state["target_actor"])
        self.target_critic.set_flat(state["target_critic"])
        self.actor_opt.load_state_dict(state["actor_opt"])
        self.critic_opt.load_state_dict(state["critic_opt"])
        self.exploration_noise = float(state["exploration_noise"])
        self.action_rng.bit_generator.state = state["action_rng"]
        self.stats.update(state["stats"])
