# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Fitting energies. Each returns (value, gradient) with the gradient taken
with respect to the first argument.
"""

from typing import Optional, Tuple, Union

import numpy as np

from garmentex.errors import LandmarkError, ShapeMismatchError
from garmentex.geometry.mesh import TemplateMesh, adjacent_face_pairs, face_cross, face_normals
from garmentex.render.image import Image

TV_EPS = 1e-12
TV_OFFSET = 1e-6

ArrayLike = Union[np.ndarray, Image]


def _array(x: ArrayLike) -> np.ndarray:
    return np.asarray(x.values if isinstance(x, Image) else x, dtype=np.float64)


def e_lmk(projected: np.ndarray, targets: np.ndarray,
          image_size: int) -> Tuple[float, np.ndarray]:
    """Mean Euclidean landmark distance in image_size-normalized pixels."""
    projected = np.asarray(projected, dtype=np.float64).reshape(-1, 2)
    targets = np.asarray(targets, dtype=np.float64).reshape(-1, 2)
    if projected.shape != targets.shape:
        raise ShapeMismatchError("projected and target landmark counts differ")
    if not len(projected):
        raise LandmarkError("landmark set is empty")
    diff = (projected - targets) / image_size
    dist = np.linalg.norm(diff, axis=1)
    count = len(dist)
    safe = np.where(dist > 0, dist, 1.0)
    grad = np.where(dist[:, None] > 0, diff / safe[:, None], 0.0) / (image_size * count)
    return float(dist.mean()), grad


def e_sil(rendered: ArrayLike, target: ArrayLike) -> Tuple[float, np.ndarray]:
    """Soft IoU loss 1 - sum(ab) / sum(a + b - ab); 0 when the union is empty."""
    a, b = _array(rendered), _array(target)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"silhouette shapes differ: {a.shape} vs {b.shape}")
    if a.ndim == 3 and a.shape[2] != 1:
        raise ShapeMismatchError("silhouettes must be single-channel")
    inter = float(np.sum(a * b))
    union = float(np.sum(a + b - a * b))
    if union <= 0.0:
        return 0.0, np.zeros_like(a)
    grad = -(b * union - inter * (1.0 - b)) / (union * union)
    return 1.0 - inter / union, grad


def e_norm(mesh: TemplateMesh, vertices: np.ndarray) -> Tuple[float, np.ndarray]:
    """Mean (1 - n_i . n_j) over adjacent face pairs."""
    vertices = np.asarray(vertices, dtype=np.float64)
    pairs = adjacent_face_pairs(mesh)
    grad = np.zeros_like(vertices)
    if not len(pairs):
        face_normals(mesh, vertices)
        return 0.0, grad
    normals = face_normals(mesh, vertices)
    cross = face_cross(mesh, vertices)
    length = np.linalg.norm(cross, axis=1)
    i, j = pairs[:, 0], pairs[:, 1]
    count = len(pairs)
    energy = float(np.mean(1.0 - np.einsum("pk,pk->p", normals[i], normals[j])))

    grad_n = np.zeros_like(normals)
    np.add.at(grad_n, i, -normals[j] / count)
    np.add.at(grad_n, j, -normals[i] / count)
    # dn = (I - n n^T) dc / |c|
    grad_c = (grad_n - normals * np.einsum("fk,fk->f", grad_n, normals)[:, None]) / length[:, None]

    a, b, c = (vertices[mesh.faces[:, k]] for k in range(3))
    e1, e2 = b - a, c - a
    g1 = np.cross(e2, grad_c)
    g2 = np.cross(grad_c, e1)
    np.add.at(grad, mesh.faces[:, 0], -(g1 + g2))
    np.add.at(grad, mesh.faces[:, 1], g1)
    np.add.at(grad, mesh.faces[:, 2], g2)
    return energy, grad


def _axis_tv(image: np.ndarray, axis: int, mask: Optional[np.ndarray]):
    n = image.shape[axis]
    lo = np.take(image, np.arange(n - 1), axis=axis)
    hi = np.take(image, np.arange(1, n), axis=axis)
    diff = hi - lo
    root = np.sqrt(np.sum(diff * diff, axis=2) + TV_EPS)
    if mask is not None:
        valid = np.take(mask, np.arange(n - 1), axis=axis) & np.take(mask, np.arange(1, n), axis=axis)
    else:
        valid = np.ones(root.shape, dtype=bool)
    count = int(valid.sum())
    grad = np.zeros_like(image)
    if count == 0:
        return 0.0, grad
    energy = float(np.sum(np.where(valid, root - TV_OFFSET, 0.0)) / count)
    g = np.where(valid[:, :, None], diff / root[:, :, None], 0.0) / count
    if axis == 0:
        grad[1:] += g
        grad[:-1] -= g
    else:
        grad[:, 1:] += g
        grad[:, :-1] -= g
    return energy, grad


def e_tv(image: ArrayLike, mask: Optional[np.ndarray] = None) -> Tuple[float, np.ndarray]:
    """
    Isotropic total variation with forward differences.

    Per pixel and axis the difference is measured as an L2 norm over
    channels; each axis is averaged over its own difference count. With a
    mask only differences between two masked pixels count.
    """
    values = _array(image)
    if values.ndim == 2:
        values = values[:, :, None]
    if mask is not None:
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != values.shape[:2]:
            raise ShapeMismatchError("TV mask does not match image")
    ex, gx = _axis_tv(values, 1, mask)
    ey, gy = _axis_tv(values, 0, mask)
    grad = gx + gy
    if np.ndim(_array(image)) == 2:
        grad = grad[:, :, 0]
    return ex + ey, grad


def e_img(rendered: np.ndarray, target: np.ndarray,
          mask: np.ndarray, count: Optional[int] = None) -> Tuple[float, np.ndarray]:
    """Squared color error summed over channels, averaged over masked pixels."""
    rendered = np.asarray(rendered, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    if rendered.shape != target.shape:
        raise ShapeMismatchError(f"image shapes differ: {rendered.shape} vs {target.shape}")
    mask = np.asarray(mask, dtype=np.float64)[:, :, None]
    n = float(count if count is not None else mask.sum())
    if n <= 0:
        return 0.0, np.zeros_like(rendered)
    diff = (rendered - target) * mask
    return float(np.sum(diff * diff) / n), 2.0 * diff / n
