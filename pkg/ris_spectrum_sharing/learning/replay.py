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
Replay Buffer
=============

Halka biçimli geçiş deposu ve düzgün mini-batch örnekleyici.
"""

from typing import Any, Dict, Optional

import numpy as np

from ..exceptions import InsufficientBuffer


class ReplayBuffer:
    """
    Sabit kapasiteli halka tampon

    Depolama ihtiyaç oldukça ikiye katlanarak kapasiteye kadar büyür.
    """

    FIELDS = ("states", "actions", "rewards", "next_states", "dones")

    def __init__(self, state_dim: int, action_dim: int, capacity: int,
                 rng: Optional[np.random.Generator] = None, initial_allocation: int = 1024):
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        self.state_dim = int(state_dim)
        self.action_dim = int(action_dim)
        self.capacity = int(capacity)
        self.rng = rng if rng is not None else np.random.default_rng()
        self.cursor = 0
        self.size = 0
        self.inserted = 0
        self._allocate(min(self.capacity, initial_allocation))

    def _allocate(self, rows: int):
        old = getattr(self, "_storage", None)
        storage = {
            "states": np.zeros((rows, self.state_dim)),
            "actions": np.zeros((rows, self.action_dim)),
            "rewards": np.zeros(rows),
            "next_states": np.zeros((rows, self.state_dim)),
            "dones": np.zeros(rows),
            "step": np.zeros(rows, dtype=np.int64),
        }
        if old is not None:
            count = len(old["rewards"])
            for key, array in old.items():
                storage[key][:count] = array
        self._storage = storage

    def __len__(self) -> int:
        return self.size

    def add(self, state: np.ndarray, action: np.ndarray, reward: float,
            next_state: np.ndarray, done: bool):
        """Geçiş ekler; kapasite doluysa en eskisinin üzerine yazar"""
        if self.cursor >= len(self._storage["rewards"]):
            self._allocate(min(self.capacity, 2 * len(self._storage["rewards"])))
        i = self.cursor
        self._storage["states"][i] = state
        self._storage["actions"][i] = action
        self._storage["rewards"][i] = reward
        self._storage["next_states"][i] = next_state
        self._storage["dones"][i] = float(done)
        self._storage["step"][i] = self.inserted
        self.inserted += 1
        self.cursor = (self.cursor + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def sample(self, batch_size: int) -> Dict[str, np.ndarray]:
        """
        Düzgün mini-batch

        Raises:
            InsufficientBuffer: size < batch_size ise
        """
        if self.size < batch_size:
            raise InsufficientBuffer(self.size, batch_size)
        index = self.rng.integers(0, self.size, size=batch_size)
        batch = {key: self._storage[key][index].copy() for key in self.FIELDS}
        batch["inserted_at"] = self._storage["step"][index].copy()
        return batch

    def state_dict(self) -> Dict[str, Any]:
        data = {key: self._storage[key][:self.size].copy() for key in self._storage}
        data.update({"cursor": self.cursor, "size": self.size, "inserted": self.inserted,
                     "capacity": self.capacity, "rng": self.rng.bit_generator.state})
        return data

    def load_state_dict(self, state: Dict[str, Any]):
        self.capacity = int(state["capacity"])
        self.size = int(state["size"])
        self.cursor = int(state["cursor"])
        self.inserted = int(state["inserted"])
        self._storage = None
        self._allocate(max(self.size, min(self.capacity, 1024)))
        for key in ("states", "actions", "rewards", "next_states", "dones", "step"):
            self._storage[key][:self.size] = state[key]
        self.rng.bit_generator.state = state["rng"]
