# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

import math

import numpy as np


class Adam:
    """Adaptive-moment gradient descent over a flat parameter array."""

    def __init__(self, lr: float, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.m = None
        self.v = None
        self.t = 0

    def step(self, params: np.ndarray, grad: np.ndarray) -> np.ndarray:
        grad = np.asarray(grad, dtype=np.float64)
        if self.m is None:
            self.m = np.zeros_like(grad)
            self.v = np.zeros_like(grad)
        self.t += 1
        self.m = self.beta1 * self.m + (1.0 - self.beta1) * grad
        self.v = self.beta2 * self.v + (1.0 - self.beta2) * grad * grad
        m_hat = self.m / (1.0 - self.beta1 ** self.t)
        v_hat = self.v / (1.0 - self.beta2 ** self.t)
        return params - self.lr * m_hat / (np.sqrt(v_hat) + self.eps)


def cosine_decay(start: float, end: float, step: int, steps: int) -> float:
    """w(t) = end + (start - end)(1 + cos(pi t / steps)) / 2."""
    if steps <= 0:
        return end
    t = min(max(step, 0), steps)
    return end + (start - end) * 0.5 * (1.0 + math.cos(math.pi * t / steps))
