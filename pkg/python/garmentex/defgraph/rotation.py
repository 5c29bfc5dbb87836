# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Axis-angle rotations and their derivatives.

`rodrigues_jacobian` uses the closed form of Gallego and Yezzi for
dR/dv_i; below SMALL_ANGLE it falls back to the first-order term [e_i]x.
"""

import numpy as np

SMALL_ANGLE = 1e-6


def skew(v: np.ndarray) -> np.ndarray:
    """(..., 3) -> (..., 3, 3) cross-product matrices."""
    v = np.asarray(v, dtype=np.float64)
    out = np.zeros(v.shape[:-1] + (3, 3))
    out[..., 0, 1] = -v[..., 2]
    out[..., 0, 2] = v[..., 1]
    out[..., 1, 0] = v[..., 2]
    out[..., 1, 2] = -v[..., 0]
    out[..., 2, 0] = -v[..., 1]
    out[..., 2, 1] = v[..., 0]
    return out


def rodrigues(axis_angles: np.ndarray) -> np.ndarray:
    """(K, 3) axis-angle vectors -> (K, 3, 3) rotation matrices."""
    v = np.asarray(axis_angles, dtype=np.float64).reshape(-1, 3)
    theta = np.linalg.norm(v, axis=1)
    K = skew(v)
    KK = K @ K
    small = theta < SMALL_ANGLE
    safe = np.where(small, 1.0, theta)
    a = np.where(small, 1.0, np.sin(safe) / safe)
    b = np.where(small, 0.5, (1.0 - np.cos(safe)) / (safe * safe))
    eye = np.broadcast_to(np.eye(3), K.shape)
    return eye + a[:, None, None] * K + b[:, None, None] * KK


def rodrigues_jacobian(axis_angles: np.ndarray) -> np.ndarray:
    """(K, 3) -> (K, 3, 3, 3) where out[k, m] = dR_k / dv_m."""
    v = np.asarray(axis_angles, dtype=np.float64).reshape(-1, 3)
    R = rodrigues(v)
    theta2 = np.einsum("ki,ki->k", v, v)
    basis = skew(np.eye(3))
    out = np.broadcast_to(basis, (len(v), 3, 3, 3)).copy()

    big = theta2 >= SMALL_ANGLE * SMALL_ANGLE
    if np.any(big):
        vb, Rb, t2 = v[big], R[big], theta2[big]
        Vx = skew(vb)
        eye_minus_r = np.eye(3) - Rb
        for m in range(3):
            # v x ((I - R) e_m)
            col = np.cross(vb, eye_minus_r[:, :, m])
            term = vb[:, m, None, None] * Vx + skew(col)
            out[big, m] = (term / t2[:, None, None]) @ Rb
    return out
