# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
One view of a catalog garment: pre-masked image, silhouette, 2D landmarks.

Landmark files are JSON: {"front": {"name": [x, y], ...}, "back": {...}}
with coordinates in pixels of that view's image.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Union

import numpy as np

from garmentex.errors import (
    ImageFormatError,
    LandmarkError,
    MissingInputError,
    ShapeMismatchError,
)
from garmentex.geometry.mesh import TemplateMesh
from garmentex.render.camera import VIEWS, Camera
from garmentex.render.image import Image

PathLike = Union[str, Path]


@dataclass(frozen=True)
class Observation:
    image: Image
    silhouette: Image
    landmarks_2d: Dict[str, np.ndarray] = field(default_factory=dict)
    camera: Camera = field(default_factory=Camera)

    def __post_init__(self):
        if self.silhouette.channels != 1:
            raise ImageFormatError("silhouette must be single-channel")
        if self.image.shape[:2] != self.silhouette.shape[:2]:
            raise ShapeMismatchError("image and silhouette sizes differ")
        size = self.camera.image_size
        if self.image.shape[:2] != (size, size):
            raise ShapeMismatchError(
                f"{self.camera.view} image is {self.image.shape[:2]}, camera expects {size}x{size}")
        landmarks = {}
        for name, xy in dict(self.landmarks_2d).items():
            point = np.asarray(xy, dtype=np.float64).reshape(-1)
            if point.shape != (2,) or not np.all(np.isfinite(point)):
                raise LandmarkError(f"landmark {name!r} must be a finite [x, y] pair")
            landmarks[str(name)] = point
        object.__setattr__(self, "landmarks_2d", landmarks)

    @property
    def view(self) -> str:
        return self.camera.view

    @property
    def target_mask(self) -> np.ndarray:
        return self.silhouette.plane >= 0.5

    @property
    def landmark_names(self) -> List[str]:
        return sorted(self.landmarks_2d)

    def landmark_arrays(self, mesh: TemplateMesh):
        """(vertex indices, (L, 2) pixel targets) in sorted name order."""
        names = self.landmark_names
        missing = [n for n in names if n not in mesh.landmark_indices]
        if missing:
            raise LandmarkError(f"{self.view} landmarks not on template: {', '.join(missing)}")
        idx = np.array([mesh.landmark_indices[n] for n in names], dtype=np.int64)
        targets = np.array([self.landmarks_2d[n] for n in names]).reshape(-1, 2)
        return idx, targets


def load_landmark_observations(path: PathLike) -> Dict[str, Dict[str, np.ndarray]]:
    path = Path(path)
    if not path.is_file():
        raise MissingInputError(f"landmark file not found: {path}")
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise LandmarkError(f"invalid JSON in {path}: {e}")
    if not isinstance(payload, dict):
        raise LandmarkError(f"{path} must hold an object keyed by view")
    unknown = set(payload) - set(VIEWS)
    if unknown:
        raise LandmarkError(f"unknown views in {path}: {', '.join(sorted(unknown))}")
    out = {}
    for view, points in payload.items():
        if not isinstance(points, dict):
            raise LandmarkError(f"{view} landmarks must be an object")
        out[view] = {}
        for name, xy in points.items():
            if not isinstance(xy, (list, tuple)) or len(xy) != 2:
                raise LandmarkError(f"{view} landmark {name!r} must be [x, y]")
            out[view][str(name)] = np.asarray(xy, dtype=np.float64)
    return out


def write_landmark_observations(landmarks: Mapping[str, Mapping[str, np.ndarray]],
                                path: PathLike):
    payload = {view: {name: [float(v) for v in xy] for name, xy in sorted(points.items())}
               for view, points in landmarks.items()}
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n")


def require_views(observations: Mapping[str, Observation]) -> Dict[str, Observation]:
    """Both front and back views are mandatory."""
    missing = [v for v in VIEWS if observations.get(v) is None]
    if missing:
        raise MissingInputError(f"both views required; missing {', '.join(missing)}")
    for view in VIEWS:
        if observations[view].view != view:
            raise ShapeMismatchError(f"observation under {view!r} uses a {observations[view].view} camera")
    return {v: observations[v] for v in VIEWS}
