# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Image quality metrics.

SSIM uses an 11 x 11 Gaussian window (sigma 1.5), K1 = 0.01, K2 = 0.03 and
dynamic range L = 1, evaluated over the valid region (no padding) and
averaged over channels and pixels. An optional mask selects which window
centers count.
"""

from typing import Optional, Union

import numpy as np
from scipy import ndimage

from garmentex.errors import ImageFormatError, ShapeMismatchError
from garmentex.fit.scaling import mask_iou
from garmentex.render.image import Image

WINDOW = 11
WINDOW_SIGMA = 1.5
K1 = 0.01
K2 = 0.03
DATA_RANGE = 1.0

ArrayLike = Union[Image, np.ndarray]


def _array(x: ArrayLike) -> np.ndarray:
    values = np.asarray(x.values if isinstance(x, Image) else x, dtype=np.float64)
    return values[:, :, None] if values.ndim == 2 else values


def gaussian_window(size: int = WINDOW, sigma: float = WINDOW_SIGMA) -> np.ndarray:
    x = np.arange(size) - (size - 1) / 2.0
    g = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return g / g.sum()


def _filter_valid(x: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    half = len(kernel) // 2
    out = ndimage.correlate1d(x, kernel, axis=0, mode="constant")
    out = ndimage.correlate1d(out, kernel, axis=1, mode="constant")
    return out[half:x.shape[0] - half, half:x.shape[1] - half]


def ssim_map(a: ArrayLike, b: ArrayLike) -> np.ndarray:
    x, y = _array(a), _array(b)
    if x.shape != y.shape:
        raise ShapeMismatchError(f"image shapes differ: {x.shape} vs {y.shape}")
    if min(x.shape[:2]) < WINDOW:
        raise ImageFormatError(f"SSIM needs images of at least {WINDOW}x{WINDOW}")
    kernel = gaussian_window()
    c1 = (K1 * DATA_RANGE) ** 2
    c2 = (K2 * DATA_RANGE) ** 2
    mu_x = _filter_valid(x, kernel)
    mu_y = _filter_valid(y, kernel)
    sxx = _filter_valid(x * x, kernel) - mu_x * mu_x
    syy = _filter_valid(y * y, kernel) - mu_y * mu_y
    sxy = _filter_valid(x * y, kernel) - mu_x * mu_y
    num = (2.0 * mu_x * mu_y + c1) * (2.0 * sxy + c2)
    den = (mu_x * mu_x + mu_y * mu_y + c1) * (sxx + syy + c2)
    return num / den


def ssim(a: ArrayLike, b: ArrayLike, mask: Optional[np.ndarray] = None) -> float:
    values = ssim_map(a, b)
    if mask is None:
        return float(values.mean())
    half = WINDOW // 2
    mask = np.asarray(mask, dtype=bool)
    inner = mask[half:mask.shape[0] - half, half:mask.shape[1] - half]
    if not inner.any():
        raise ShapeMismatchError("SSIM mask selects no window centers")
    return float(values[inner].mean())


def psnr(a: ArrayLike, b: ArrayLike, mask: Optional[np.ndarray] = None) -> float:
    """10 log10(1 / MSE); float('inf') for identical inputs."""
    x, y = _array(a), _array(b)
    if x.shape != y.shape:
        raise ShapeMismatchError(f"image shapes differ: {x.shape} vs {y.shape}")
    diff = (x - y) ** 2
    if mask is not None:
        diff = diff[np.asarray(mask, dtype=bool)]
    mse = float(diff.mean())
    if mse == 0.0:
        return float("inf")
    return 10.0 * np.log10(DATA_RANGE ** 2 / mse)


__all__ = ["gaussian_window", "mask_iou", "psnr", "ssim", "ssim_map"]
