# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Orthographic front/back cameras.

Both views image the square [-extent, extent]^2 of the xy-plane. The front
camera looks along -z; the back camera looks along +z with x mirrored, so
both images read as seen by a shopper facing that side. Image row 0 is the
top (largest y). Pixel (col, row) has its center at (col + 0.5, row + 0.5).
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from garmentex.errors import ParameterError

VIEWS = ("front", "back")
MIN_IMAGE_SIZE = 16


@dataclass(frozen=True)
class Camera:
    view: str = "front"
    world_extent: float = 1.25
    image_size: int = 512

    def __post_init__(self):
        if self.view not in VIEWS:
            raise ParameterError(f"camera view must be one of {VIEWS}, got {self.view!r}")
        if not self.world_extent > 0:
            raise ParameterError("world_extent must be > 0")
        if self.image_size < MIN_IMAGE_SIZE:
            raise ParameterError(f"image_size must be >= {MIN_IMAGE_SIZE}")

    @property
    def mirror(self) -> float:
        return 1.0 if self.view == "front" else -1.0

    @classmethod
    def pair(cls, world_extent: float = 1.25, image_size: int = 512) -> Tuple["Camera", "Camera"]:
        return cls("front", world_extent, image_size), cls("back", world_extent, image_size)


def ndc(camera: Camera, points: np.ndarray) -> np.ndarray:
    """(N, 3) -> (N, 2) normalized coordinates in [-1, 1], y pointing down."""
    points = np.asarray(points, dtype=np.float64)
    return np.stack([camera.mirror * points[:, 0] / camera.world_extent,
                     -points[:, 1] / camera.world_extent], axis=1)


def ndc_jacobian(camera: Camera) -> np.ndarray:
    """Constant (2, 3) derivative of `ndc` with respect to a point."""
    e = camera.world_extent
    return np.array([[camera.mirror / e, 0.0, 0.0], [0.0, -1.0 / e, 0.0]])


def project(camera: Camera, points: np.ndarray) -> np.ndarray:
    """(N, 3) -> (N, 2) continuous pixel coordinates (x right, y down)."""
    return (ndc(camera, points) + 1.0) * 0.5 * camera.image_size


def projection_jacobian(camera: Camera) -> np.ndarray:
    return ndc_jacobian(camera) * 0.5 * camera.image_size


def depth(camera: Camera, points: np.ndarray) -> np.ndarray:
    """Signed depth toward the viewer; larger is nearer."""
    points = np.asarray(points, dtype=np.float64)
    return points[:, 2] if camera.view == "front" else -points[:, 2]


def pixel_centers_ndc(image_size: int) -> np.ndarray:
    """NDC coordinate of each pixel center along one axis."""
    return 2.0 * (np.arange(image_size) + 0.5) / image_size - 1.0
