# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Vectorized 2D triangle helpers shared by the UV-domain and image-space
rasterizers: bounding-box cell enumeration and barycentric coordinates.
"""

from typing import Tuple

import numpy as np

INSIDE_EPS = 1e-12


def bbox_cells(x0: np.ndarray, x1: np.ndarray, y0: np.ndarray,
               y1: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Enumerate every integer cell of a batch of inclusive boxes.

    Returns (item, cx, cy): for each covered cell, the index of the box it
    came from and its integer column/row.
    """
    x0 = np.asarray(x0, dtype=np.int64)
    y0 = np.asarray(y0, dtype=np.int64)
    w = np.maximum(np.asarray(x1, dtype=np.int64) - x0 + 1, 0)
    h = np.maximum(np.asarray(y1, dtype=np.int64) - y0 + 1, 0)
    counts = w * h
    total = int(counts.sum())
    if total == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    item = np.repeat(np.arange(len(counts)), counts)
    starts = np.cumsum(counts) - counts
    local = np.arange(total) - np.repeat(starts, counts)
    cx = x0[item] + local % w[item]
    cy = y0[item] + local // w[item]
    return item, cx, cy


def cross2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def barycentric(p: np.ndarray, a: np.ndarray, b: np.ndarray,
                c: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Barycentric coordinates of points p in triangles (a, b, c), all (M, 2).

    Returns (bary (M, 3), doubled signed area (M,)). Rows with zero area get
    NaN coordinates so they never test as inside.
    """
    area2 = cross2(b - a, c - a)
    with np.errstate(divide="ignore", invalid="ignore"):
        l0 = cross2(b - p, c - p) / area2
        l1 = cross2(c - p, a - p) / area2
        l2 = cross2(a - p, b - p) / area2
    bary = np.stack([l0, l1, l2], axis=-1)
    bary[area2 == 0] = np.nan
    return bary, area2


def inside(bary: np.ndarray, eps: float = INSIDE_EPS) -> np.ndarray:
    """Closed point-in-triangle test from barycentric coordinates."""
    with np.errstate(invalid="ignore"):
        return np.all(bary >= -eps, axis=-1)
