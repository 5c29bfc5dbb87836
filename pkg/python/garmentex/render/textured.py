# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Emission-only textured rendering as a sparse linear operator.

For frozen geometry every rendered pixel is a bilinear combination of four
texels, so rendering is `A @ T` with A of shape (H*W, R*R). The texel
gradient of any image loss is `A.T @ dL/dI`, and coverage is `A.T @ 1`.
Texture lookups clamp at the atlas border.

Coverage maps are stored as raw float64 `.npy` arrays; the PNG written next
to them is for viewing only.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
from scipy import sparse

from garmentex.errors import DomainError, ImageFormatError, MissingInputError, ShapeMismatchError
from garmentex.geometry.uv import DomainMask, uv_to_texel
from garmentex.render.camera import Camera
from garmentex.render.image import Image, TextureMap
from garmentex.render.raster import Fragments, rasterize


@dataclass(frozen=True)
class SamplingOperator:
    camera: Camera
    resolution: int
    matrix: sparse.csr_matrix
    fragments: Fragments

    @property
    def covered(self) -> np.ndarray:
        return self.fragments.covered

    def render(self, texels: np.ndarray) -> np.ndarray:
        """(R, R, C) texels -> (H, W, C) image values."""
        texels = np.asarray(texels, dtype=np.float64)
        if texels.shape[:2] != (self.resolution, self.resolution):
            raise ShapeMismatchError(
                f"texture must be {self.resolution}x{self.resolution}, got {texels.shape}")
        flat = texels.reshape(self.resolution * self.resolution, -1)
        size = self.camera.image_size
        return np.asarray(self.matrix @ flat).reshape(size, size, -1)

    def backproject(self, values: np.ndarray) -> np.ndarray:
        """(H, W, C) image-space values -> (R, R, C) texel space (adjoint of render)."""
        values = np.asarray(values, dtype=np.float64)
        size = self.camera.image_size
        if values.shape[:2] != (size, size):
            raise ShapeMismatchError(f"image must be {size}x{size}, got {values.shape}")
        flat = values.reshape(size * size, -1)
        r = self.resolution
        return np.asarray(self.matrix.T @ flat).reshape(r, r, -1)


def bilinear_weights(texel_xy: np.ndarray, resolution: int):
    """Column indices (M, 4) and weights (M, 4) of clamped bilinear lookups."""
    x, y = texel_xy[:, 0], texel_xy[:, 1]
    x0, y0 = np.floor(x), np.floor(y)
    fx, fy = x - x0, y - y0
    x0, y0 = x0.astype(np.int64), y0.astype(np.int64)
    cols = []
    for dy, dx in ((0, 0), (0, 1), (1, 0), (1, 1)):
        cx = np.clip(x0 + dx, 0, resolution - 1)
        cy = np.clip(y0 + dy, 0, resolution - 1)
        cols.append(cy * resolution + cx)
    weights = np.stack([(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy], axis=1)
    return np.stack(cols, axis=1), weights


def sampling_operator(vertices: np.ndarray, faces: np.ndarray, corner_uvs: np.ndarray,
                      camera: Camera, resolution: int) -> SamplingOperator:
    faces = np.asarray(faces, dtype=np.int64)
    corner_uvs = np.asarray(corner_uvs, dtype=np.float64)
    if corner_uvs.shape != (len(faces), 3, 2):
        raise ShapeMismatchError(f"corner_uvs must be ({len(faces)}, 3, 2), got {corner_uvs.shape}")
    fragments = rasterize(vertices, faces, camera)
    size = camera.image_size
    pixel = np.flatnonzero(fragments.covered.reshape(-1))
    face = fragments.face_index.reshape(-1)[pixel]
    bary = fragments.bary.reshape(-1, 3)[pixel]
    uv = np.einsum("mi,mij->mj", bary, corner_uvs[face])
    cols, weights = bilinear_weights(uv_to_texel(uv, resolution), resolution)
    rows = np.repeat(pixel, 4)
    matrix = sparse.coo_matrix((weights.reshape(-1), (rows, cols.reshape(-1))),
                               shape=(size * size, resolution * resolution)).tocsr()
    matrix.sum_duplicates()
    return SamplingOperator(camera, resolution, matrix, fragments)


def render_textured(vertices: np.ndarray, faces: np.ndarray, corner_uvs: np.ndarray,
                    texture: TextureMap, camera: Camera) -> Image:
    op = sampling_operator(vertices, faces, corner_uvs, camera, texture.resolution)
    return Image(op.render(texture.values))


@dataclass(frozen=True)
class CoverageMap:
    """Accumulated visible-pixel sampling weight per texel."""
    resolution: int
    weight: np.ndarray

    def __post_init__(self):
        weight = np.array(self.weight, dtype=np.float64)
        if weight.shape != (self.resolution, self.resolution):
            raise ShapeMismatchError(
                f"coverage must be {self.resolution}x{self.resolution}, got {weight.shape}")
        if np.any(weight < 0):
            raise DomainError("coverage weights must be non-negative")
        weight.setflags(write=False)
        object.__setattr__(self, "weight", weight)

    @property
    def covered(self) -> np.ndarray:
        return self.weight > 0

    def normalized(self) -> np.ndarray:
        """Weights scaled to [0, 1] for display."""
        peak = self.weight.max()
        return self.weight / peak if peak > 0 else self.weight.copy()


def write_coverage(coverage: CoverageMap, path: Union[str, Path]):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as fh:
        np.save(fh, coverage.weight, allow_pickle=False)


def read_coverage(path: Union[str, Path]) -> CoverageMap:
    path = Path(path)
    if not path.is_file():
        raise MissingInputError(f"coverage not found: {path}")
    try:
        weight = np.load(path, allow_pickle=False)
    except (ValueError, OSError, EOFError) as e:
        raise ImageFormatError(f"cannot read coverage {path}: {e}")
    if weight.ndim != 2 or weight.shape[0] != weight.shape[1]:
        raise ImageFormatError(f"{path} must hold a square 2-D array, got {weight.shape}")
    return CoverageMap(weight.shape[0], weight)


def coverage_from_operators(operators: Sequence[SamplingOperator],
                            pixel_masks: Optional[Sequence[np.ndarray]] = None,
                            domain: Optional[DomainMask] = None) -> CoverageMap:
    resolution = operators[0].resolution
    weight = np.zeros((resolution, resolution))
    for i, op in enumerate(operators):
        visible = op.covered.astype(np.float64)
        if pixel_masks is not None:
            visible = visible * np.asarray(pixel_masks[i], dtype=np.float64)
        weight += op.backproject(visible[:, :, None])[:, :, 0]
    if domain is not None:
        if domain.resolution != resolution:
            raise ShapeMismatchError("domain resolution does not match coverage")
        weight = np.where(domain.inside, weight, 0.0)
    return CoverageMap(resolution, np.maximum(weight, 0.0))


def texel_coverage(vertices: np.ndarray, faces: np.ndarray, corner_uvs: np.ndarray,
                   cameras: Sequence[Camera], resolution: int,
                   domain: Optional[DomainMask] = None) -> CoverageMap:
    """Splat the bilinear footprint of every visible pixel over all views."""
    operators = [sampling_operator(vertices, faces, corner_uvs, cam, resolution)
                 for cam in cameras]
    return coverage_from_operators(operators, domain=domain)
