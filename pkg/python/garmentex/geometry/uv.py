# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
UV-domain rasterization.

Texel (row, col) of an R x R map has its center at
u = (col + 0.5) / R, v = 1 - (row + 0.5) / R, so row 0 is the top of the
atlas. `uv_to_texel` maps UVs to continuous texel coordinates in which
integer values are texel centers.
"""

from dataclasses import dataclass

import numpy as np

from garmentex.errors import DomainError, ParameterError
from garmentex.geometry.mesh import TemplateMesh
from garmentex.geometry.triangles import barycentric, bbox_cells, inside

MIN_RESOLUTION = 16


def uv_to_texel(uv: np.ndarray, resolution: int) -> np.ndarray:
    """(..., 2) UV -> (..., 2) continuous (x=col, y=row) texel coordinates."""
    uv = np.asarray(uv, dtype=np.float64)
    x = uv[..., 0] * resolution - 0.5
    y = (1.0 - uv[..., 1]) * resolution - 0.5
    return np.stack([x, y], axis=-1)


def texel_centers_uv(resolution: int) -> np.ndarray:
    """(R, R, 2) UV coordinate of each texel center."""
    idx = (np.arange(resolution) + 0.5) / resolution
    u, v = np.meshgrid(idx, 1.0 - idx)
    return np.stack([u, v], axis=-1)


@dataclass(frozen=True)
class DomainMask:
    """Texels of an R x R map that lie inside the mesh UV atlas."""
    resolution: int
    inside: np.ndarray
    face_index: np.ndarray

    def __post_init__(self):
        if self.resolution < MIN_RESOLUTION:
            raise ParameterError(f"resolution must be >= {MIN_RESOLUTION}")
        inside_arr = np.array(self.inside, dtype=bool)
        faces = np.array(self.face_index, dtype=np.int64)
        shape = (self.resolution, self.resolution)
        if inside_arr.shape != shape or faces.shape != shape:
            raise ParameterError(f"domain arrays must be {shape}")
        if not inside_arr.any():
            raise DomainError("UV domain is empty")
        inside_arr.setflags(write=False)
        faces.setflags(write=False)
        object.__setattr__(self, "inside", inside_arr)
        object.__setattr__(self, "face_index", faces)

    @property
    def count(self) -> int:
        return int(self.inside.sum())

    @property
    def fraction(self) -> float:
        return self.count / float(self.resolution * self.resolution)


def rasterize_uv_domain(mesh: TemplateMesh, resolution: int) -> DomainMask:
    """Mark texels whose centers fall in some face's UV triangle."""
    return domain_from_corner_uvs(mesh.corner_uvs, resolution)


def domain_from_corner_uvs(corner_uvs: np.ndarray, resolution: int) -> DomainMask:
    if resolution < MIN_RESOLUTION:
        raise ParameterError(f"resolution must be >= {MIN_RESOLUTION}")
    corners = uv_to_texel(corner_uvs, resolution)
    lo = np.clip(np.ceil(corners.min(axis=1)), 0, resolution - 1).astype(np.int64)
    hi = np.clip(np.floor(corners.max(axis=1)), 0, resolution - 1).astype(np.int64)
    face, cx, cy = bbox_cells(lo[:, 0], hi[:, 0], lo[:, 1], hi[:, 1])

    face_index = np.full((resolution, resolution), -1, dtype=np.int64)
    if len(face):
        p = np.stack([cx, cy], axis=1).astype(np.float64)
        tri = corners[face]
        bary, _ = barycentric(p, tri[:, 0], tri[:, 1], tri[:, 2])
        hit = inside(bary)
        # Lowest face index wins on shared edges so the map is deterministic.
        order = np.argsort(face[hit], kind="stable")[::-1]
        face_index[cy[hit][order], cx[hit][order]] = face[hit][order]
    return DomainMask(resolution, face_index >= 0, face_index)
