# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

import numpy as np

from garmentex import get_logger
from garmentex.errors import InputError, ParameterError
from garmentex.geometry.mesh import TemplateMesh
from garmentex.fit.observation import Observation
from garmentex.render.raster import render_mask


def mask_iou(a: np.ndarray, b: np.ndarray) -> float:
    a, b = np.asarray(a, dtype=bool), np.asarray(b, dtype=bool)
    union = np.count_nonzero(a | b)
    if union == 0:
        return 1.0
    return np.count_nonzero(a & b) / union


def scale_candidates(scale_min: float, scale_max: float, scale_step: float) -> np.ndarray:
    if scale_step <= 0 or scale_min <= 0 or scale_min > scale_max:
        raise ParameterError("scale sweep needs 0 < min <= max and step > 0")
    count = int(np.floor((scale_max - scale_min) / scale_step + 1e-9)) + 1
    return np.round(scale_min + scale_step * np.arange(count), 10)


def auto_scale(mesh: TemplateMesh, observation: Observation, scale_min: float = 0.5,
               scale_max: float = 2.0, scale_step: float = 0.02) -> float:
    """
    Uniform template scale (about the origin) maximizing hard-silhouette IoU
    with the observed silhouette. The target is binarized at half its peak.
    Ties go to the smaller scale.
    """
    target = observation.silhouette.plane
    peak = float(target.max())
    if peak <= 0:
        raise InputError(f"{observation.view} silhouette is empty")
    target = target >= 0.5 * peak

    scales = scale_candidates(scale_min, scale_max, scale_step)
    scores = np.array([mask_iou(render_mask(mesh.vertices * s, mesh.faces, observation.camera),
                                target) for s in scales])
    best = int(np.argmax(scores))
    get_logger().info("auto scale selected", {"scale": float(scales[best]),
                                              "iou": float(scores[best])})
    return float(scales[best])
