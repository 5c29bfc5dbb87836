# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
2D thin-plate splines.

    f(p) = affine @ [p; 1] + sum_i w_i U(|p - src_i|),   U(r) = r^2 log r

Solved from the standard bordered system with `regularization` added to
the kernel diagonal.
"""

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from garmentex.errors import ParameterError, ShapeMismatchError, SingularSystemError

DEFAULT_REGULARIZATION = 1e-6


def tps_kernel(r2: np.ndarray) -> np.ndarray:
    """U as a function of squared distance; U(0) = 0."""
    r2 = np.asarray(r2, dtype=np.float64)
    safe = np.where(r2 > 0, r2, 1.0)
    return np.where(r2 > 0, 0.5 * r2 * np.log(safe), 0.0)


def _pairwise_r2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = a[:, None, :] - b[None, :, :]
    return np.einsum("ijk,ijk->ij", d, d)


@dataclass(frozen=True)
class TpsWarp:
    control_src: np.ndarray
    control_dst: np.ndarray
    affine: np.ndarray
    kernel_weights: np.ndarray
    regularization: float = 0.0

    @property
    def num_controls(self) -> int:
        return len(self.control_src)


def tps_solve(src: np.ndarray, dst: np.ndarray,
              regularization: float = DEFAULT_REGULARIZATION) -> TpsWarp:
    src = np.asarray(src, dtype=np.float64).reshape(-1, 2)
    dst = np.asarray(dst, dtype=np.float64).reshape(-1, 2)
    if src.shape != dst.shape:
        raise ShapeMismatchError("source and destination control counts differ")
    if regularization < 0:
        raise ParameterError("regularization must be >= 0")
    n = len(src)
    if n < 3:
        raise SingularSystemError(f"TPS needs at least 3 control points, got {n}")
    if len(np.unique(src, axis=0)) != n:
        raise SingularSystemError("duplicate TPS control points")
    P = np.hstack([np.ones((n, 1)), src])
    if np.linalg.matrix_rank(P) < 3:
        raise SingularSystemError("TPS control points are collinear")

    K = tps_kernel(_pairwise_r2(src, src)) + regularization * np.eye(n)
    L = np.zeros((n + 3, n + 3))
    L[:n, :n] = K
    L[:n, n:] = P
    L[n:, :n] = P.T
    rhs = np.zeros((n + 3, 2))
    rhs[:n] = dst
    try:
        solution = linalg.solve(L, rhs)
    except linalg.LinAlgError as e:
        raise SingularSystemError(f"TPS system is singular: {e}")
    if not np.all(np.isfinite(solution)):
        raise SingularSystemError("TPS solve produced non-finite coefficients")

    weights = solution[:n]
    a = solution[n:]
    # rows of `a` multiply [1, x, y]; store as (2, 3) over [x, y, 1]
    affine = np.stack([a[1], a[2], a[0]], axis=1)
    return TpsWarp(src, dst, affine, weights, float(regularization))


def tps_apply(warp: TpsWarp, points: np.ndarray) -> np.ndarray:
    points = np.asarray(points, dtype=np.float64)
    shape = points.shape
    flat = points.reshape(-1, 2)
    U = tps_kernel(_pairwise_r2(flat, warp.control_src))
    out = flat @ warp.affine[:, :2].T + warp.affine[:, 2] + U @ warp.kernel_weights
    return out.reshape(shape)


def bending_energy(warp: TpsWarp) -> float:
    """trace(W^T K W) with the unregularized kernel."""
    K = tps_kernel(_pairwise_r2(warp.control_src, warp.control_src))
    return float(np.einsum("ik,ij,jk->", warp.kernel_weights, K, warp.kernel_weights))
