# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

from typing import Optional, Union

import numpy as np

from garmentex.refine.params import RefineParams
from garmentex.render.image import Image


def bilateral(image: Union[Image, np.ndarray], params: RefineParams,
              mask: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Bilateral filter: spatial Gaussian times a range Gaussian on the
    Euclidean color distance, normalized per pixel. Borders are edge-padded.
    With a mask, only masked neighbors contribute.
    """
    values = np.asarray(image.values if isinstance(image, Image) else image, dtype=np.float64)
    squeeze = values.ndim == 2
    if squeeze:
        values = values[:, :, None]
    h, w = values.shape[:2]
    r = params.bilateral_window // 2
    padded = np.pad(values, ((r, r), (r, r), (0, 0)), mode="edge")
    if mask is None:
        pad_mask = np.ones((h + 2 * r, w + 2 * r))
    else:
        pad_mask = np.pad(np.asarray(mask, dtype=np.float64), r, mode="constant")

    two_ss = 2.0 * params.bilateral_sigma_spatial ** 2
    two_sr = 2.0 * params.bilateral_sigma_range ** 2
    total = np.zeros_like(values)
    norm = np.zeros((h, w, 1))
    for dy in range(-r, r + 1):
        for dx in range(-r, r + 1):
            window = padded[r + dy:r + dy + h, r + dx:r + dx + w]
            valid = pad_mask[r + dy:r + dy + h, r + dx:r + dx + w][:, :, None]
            d2 = np.sum((window - values) ** 2, axis=2, keepdims=True)
            weight = np.exp(-(dy * dy + dx * dx) / two_ss - d2 / two_sr) * valid
            total += weight * window
            norm += weight
    out = np.where(norm > 0, total / np.where(norm > 0, norm, 1.0), values)
    return out[:, :, 0] if squeeze else out
