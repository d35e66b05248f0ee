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
Sinir Ağı Modülü
================

Tam bağlantılı ağlar, ters mod gradyanlar, Adam optimizer ve SAC için
sıkıştırılmış Gauss politika. Her şey numpy üzerinde çift hassasiyetle çalışır.
"""

import json
import struct
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..exceptions import DimensionMismatch


OUTPUT_ACTIVATIONS = ("linear", "tanh")

LOG_STD_MIN = -20.0
LOG_STD_MAX = 2.0

NETWORK_MAGIC = b"RSSNET1\n"

_HALF_LOG_2PI = 0.5 * np.log(2.0 * np.pi)


class MLP:
    """
    ReLU gizli katmanlı çok katmanlı algılayıcı

    Ağırlıklar N(0, 1/fan_in) ile, bias'lar sıfır ile başlatılır.
    """

    def __init__(self, sizes: Sequence[int], output_activation: str = "linear",
                 rng: Optional[np.random.Generator] = None, seed: Optional[int] = None):
        """
        Args:
            sizes: Katman genişlikleri [girdi, gizli..., çıktı]
            output_activation: 'linear' ya da 'tanh'
            rng: Başlatma için rastgele kaynak
            seed: rng verilmediğinde kullanılacak tohum
        """
        if len(sizes) < 2:
            raise ValueError(f"MLP needs at least input and output sizes, got {list(sizes)}")
        if output_activation not in OUTPUT_ACTIVATIONS:
            raise ValueError(f"Bilinmeyen çıktı aktivasyonu: {output_activation}")
        self.sizes = [int(s) for s in sizes]
        self.output_activation = output_activation
        self.seed = seed
        rng = rng if rng is not None else np.random.default_rng(seed)

        self.weights: List[np.ndarray] = []
        self.biases: List[np.ndarray] = []
        for fan_in, fan_out in zip(self.sizes[:-1], self.sizes[1:]):
            self.weights.append(rng.normal(0.0, 1.0 / np.sqrt(fan_in), size=(fan_in, fan_out)))
            self.biases.append(np.zeros(fan_out))

    @property
    def input_dim(self) -> int:
        return self.sizes[0]

    @property
    def output_dim(self) -> int:
        return self.sizes[-1]

    @property
    def num_parameters(self) -> int:
        return sum(w.size + b.size for w, b in zip(self.weights, self.biases))

    def parameters(self) -> List[np.ndarray]:
        """Parametre dizileri (W0, b0, W1, b1, ...)"""
        params = []
        for w, b in zip(self.weights, self.biases):
            params.extend([w, b])
        return params

    def get_flat(self) -> np.ndarray:
        return np.concatenate([p.ravel() for p in self.parameters()])

    def set_flat(self, flat: np.ndarray):
        flat = np.asarray(flat, dtype=float)
        if flat.shape != (self.num_parameters,):
            raise DimensionMismatch(f"expected {self.num_parameters} parameters, got {flat.shape}")
        offset = 0
        for param in self.parameters():
            param[...] = flat[offset:offset + param.size].reshape(param.shape)
            offset += param.size

    def copy(self) -> "MLP":
        clone = MLP.__new__(MLP)
        clone.sizes = list(self.sizes)
        clone.output_activation = self.output_activation
        clone.seed = self.seed
        clone.weights = [w.copy() for w in self.weights]
        clone.biases = [b.copy() for b in self.biases]
        return clone

    def soft_update(self, source: "MLP", tau: float):
        """Polyak ortalaması: θ' ← τθ + (1-τ)θ'"""
        for target, online in zip(self.parameters(), source.parameters()):
            target *= (1.0 - tau)
            target += tau * online

    def _check_input(self, x: np.ndarray) -> Tuple[np.ndarray, bool]:
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        x = np.atleast_2d(x)
        if x.shape[-1] != self.input_dim:
            raise DimensionMismatch(f"network expects input dim {self.input_dim}, got {x.shape[-1]}")
        return x, single

    def forward_with_cache(self, x: np.ndarray) -> Tuple[np.ndarray, Dict[str, Any]]:
        """
        İleri geçiş ve geri yayılım için ara değerler

        Returns:
            tuple: (çıktı (N, out), önbellek)
        """
        x, single = self._check_input(x)
        inputs = []
        preacts = []
        h = x
        last = len(self.weights) - 1
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            inputs.append(h)
            z = h @ w + b
            preacts.append(z)
            h = np.maximum(z, 0.0) if i < last else z
        if self.output_activation == "tanh":
            h = np.tanh(h)
        return h, {"inputs": inputs, "preacts": preacts, "output": h, "single": single}

    def forward(self, x: np.ndarray) -> np.ndarray:
        out, cache = self.forward_with_cache(x)
        return out[0] if cache["single"] else out

    def backward(self, cache: Dict[str, Any], grad_out: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Ters mod gradyan

        Args:
            cache: forward_with_cache önbelleği
            grad_out: Kaybın çıktıya göre gradyanı (N, out)

        Returns:
            tuple: (düz parametre gradyanı, girdiye göre gradyan (N, in))
        """
        delta = np.atleast_2d(np.asarray(grad_out, dtype=float))
        if self.output_activation == "tanh":
            delta = delta * (1.0 - cache["output"] ** 2)

        grads: List[np.ndarray] = []
        for i in reversed(range(len(self.weights))):
            grad_w = cache["inputs"][i].T @ delta
            grad_b = delta.sum(axis=0)
            grads = [grad_w, grad_b] + grads
            delta = delta @ self.weights[i].T
            if i > 0:
                delta = delta * (cache["preacts"][i - 1] > 0.0)
        return np.concatenate([g.ravel() for g in grads]), delta


def gradient(net: MLP, x: np.ndarray,
             loss_head: Callable[[np.ndarray], Tuple[float, np.ndarray]]) -> Tuple[float, np.ndarray]:
    """
    Skaler kaybın parametre gradyanı

    Args:
        net: Ağ
        x: Girdi
        loss_head: çıktı -> (kayıp, dkayıp/dçıktı)

    Returns:
        tuple: (kayıp, düz gradyan)
    """
    out, cache = net.forward_with_cache(x)
    loss, grad_out = loss_head(out)
    grads, _ = net.backward(cache, grad_out)
    return float(loss), grads


class Adam:
    """Bias düzeltmeli Adam optimizer"""

    def __init__(self, num_parameters: int, lr: float = 1e-4, beta1: float = 0.9,
                 beta2: float = 0.999, eps: float = 1e-8):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.m = np.zeros(num_parameters)
        self.v = np.zeros(num_parameters)
        self.t = 0

    def step(self, params: np.ndarray, grads: np.ndarray) -> np.ndarray:
        """Bir güncelleme adımı; yeni parametreleri döndürür"""
        if grads.shape != self.m.shape:
            raise DimensionMismatch(f"gradient shape {grads.shape} does not match {self.m.shape}")
        self.t += 1
        self.m = self.beta1 * self.m + (1.0 - self.beta1) * grads
        self.v = self.beta2 * self.v + (1.0 - self.beta2) * grads ** 2
        m_hat = self.m / (1.0 - self.beta1 ** self.t)
        v_hat = self.v / (1.0 - self.beta2 ** self.t)
        return params - self.lr * m_hat / (np.sqrt(v_hat) + self.eps)

    def state_dict(self) -> Dict[str, Any]:
        return {"lr": self.lr, "beta1": self.beta1, "beta2": self.beta2, "eps": self.eps,
                "m": self.m.copy(), "v": self.v.copy(), "t": self.t}

    def load_state_dict(self, state: Dict[str, Any]):
        self.lr = float(state["lr"])
        self.beta1 = float(state["beta1"])
        self.beta2 = float(state["beta2"])
        self.eps = float(state["eps"])
        self.m = np.array(state["m"], dtype=float)
        self.v = np.array(state["v"], dtype=float)
        self.t = int(state["t"])


def adam_step(opt: Adam, net: MLP, grads: np.ndarray):
    """Ağ parametrelerini yerinde günceller"""
    net.set_flat(opt.step(net.get_flat(), grads))


def softplus(x: np.ndarray) -> np.ndarray:
    return np.logaddexp(0.0, x)


class GaussianPolicy:
    """
    tanh ile sıkıştırılmış durum-bağımlı Gauss politika

    Gövde ağı [μ, log σ] üretir; log σ [-20, 2] aralığına kırpılır.
    """

    def __init__(self, state_dim: int, action_dim: int, hidden: Sequence[int] = (256, 256),
                 rng: Optional[np.random.Generator] = None):
        self.action_dim = int(action_dim)
        self.net = MLP([state_dim, *hidden, 2 * action_dim], "linear", rng=rng)

    def copy(self) -> "GaussianPolicy":
        clone = GaussianPolicy.__new__(GaussianPolicy)
        clone.action_dim = self.action_dim
        clone.net = self.net.copy()
        return clone

    def forward(self, states: np.ndarray, noise: Optional[np.ndarray] = None):
        """
        Yeniden parametrelendirilmiş örnekleme

        Args:
            states: (N, S) durumlar
            noise: (N, A) standart normal gürültü; None ise deterministik (ε = 0)

        Returns:
            tuple: (aksiyon (N, A), log π (N,), önbellek)
        """
        out, cache = self.net.forward_with_cache(states)
        mu = out[:, :self.action_dim]
        raw_log_std = out[:, self.action_dim:]
        log_std = np.clip(raw_log_std, LOG_STD_MIN, LOG_STD_MAX)
        std = np.exp(log_std)
        eps = np.zeros_like(mu) if noise is None else np.atleast_2d(noise)
        u = mu + std * eps
        action = np.tanh(u)
        correction = 2.0 * (np.log(2.0) - u - softplus(-2.0 * u))
        log_prob = np.sum(-0.5 * eps ** 2 - log_std - _HALF_LOG_2PI - correction, axis=-1)
        clamped = (raw_log_std < LOG_STD_MIN) | (raw_log_std > LOG_STD_MAX)
        return action, log_prob, {"net": cache, "u": u, "std": std, "eps": eps,
                                  "action": action, "clamped": clamped}

    def sample(self, states: np.ndarray, rng: np.random.Generator, deterministic: bool = False):
        """(aksiyon, log π, önbellek); tek durum için de (1, A) döner"""
        states = np.atleast_2d(states)
        noise = None if deterministic else rng.standard_normal((states.shape[0], self.action_dim))
        return self.forward(states, noise)

    def backward(self, cache: Dict[str, Any], grad_action: np.ndarray,
                 grad_log_prob: np.ndarray) -> np.ndarray:
        """
        Aksiyon ve log π üzerinden gelen gradyanları parametrelere taşır

        Args:
            cache: forward önbelleği
            grad_action: dL/da (N, A)
            grad_log_prob: dL/dlogπ (N,)

        Returns:
            np.ndarray: Düz parametre gradyanı
        """
        action = cache["action"]
        u = cache["u"]
        noise_scale = cache["std"] * cache["eps"]
        g_lp = np.asarray(grad_log_prob, dtype=float)[:, None]
        through_tanh = grad_action * (1.0 - action ** 2)
        grad_mu = through_tanh + g_lp * 2.0 * np.tanh(u)
        grad_log_std = through_tanh * noise_scale + g_lp * (-1.0 + 2.0 * np.tanh(u) * noise_scale)
        grad_log_std = np.where(cache["clamped"], 0.0, grad_log_std)
        grads, _ = self.net.backward(cache["net"], np.concatenate([grad_mu, grad_log_std], axis=1))
        return grads


def save_network(net: MLP, path: Union[str, Path], step: int = 0) -> Path:
    """
    Ağ parametrelerini başlıklı düz ikili dosyaya yazar

    Biçim: sihirli bayt dizisi, 4 baytlık başlık uzunluğu, JSON başlık
    (boyutlar, tohum, adım), float64 parametre yükü.
    """
    header = json.dumps({"sizes": net.sizes, "output_activation": net.output_activation,
                         "seed": net.seed, "step": int(step), "dtype": "<f8"}).encode()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as f:
        f.write(NETWORK_MAGIC)
        f.write(struct.pack("<I", len(header)))
        f.write(header)
        f.write(net.get_flat().astype("<f8").tobytes())
    return path


def load_network(path: Union[str, Path]) -> Tuple[MLP, Dict[str, Any]]:
    """
    save_network ile yazılmış ağı okur

    Returns:
        tuple: (ağ, başlık)
    """
    with open(path, "rb") as f:
        magic = f.read(len(NETWORK_MAGIC))
        if magic != NETWORK_MAGIC:
            raise ValueError(f"{path}: not a network file")
        (length,) = struct.unpack("<I", f.read(4))
        header = json.loads(f.read(length).decode())
        payload = np.frombuffer(f.read(), dtype="<f8")
    net = MLP(header["sizes"], header["output_activation"], seed=0)
    net.seed = header.get("seed")
    net.set_flat(payload.astype(float))
    return net, header
