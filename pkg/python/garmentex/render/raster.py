# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Hard z-buffer rasterization at pixel centers.

Faces are two-sided. On equal depth the lower face index wins.
"""

from dataclasses import dataclass

import numpy as np

from garmentex.geometry.triangles import barycentric, bbox_cells, inside
from garmentex.render.camera import Camera, depth, project


@dataclass(frozen=True)
class Fragments:
    """Per-pixel nearest face (-1 for background) and its barycentrics."""
    face_index: np.ndarray
    bary: np.ndarray

    @property
    def covered(self) -> np.ndarray:
        return self.face_index >= 0


def rasterize(vertices: np.ndarray, faces: np.ndarray, camera: Camera) -> Fragments:
    size = camera.image_size
    faces = np.asarray(faces, dtype=np.int64)
    pix = project(camera, vertices)
    z = depth(camera, vertices)
    tri = pix[faces]

    lo = np.ceil(tri.min(axis=1) - 0.5)
    hi = np.floor(tri.max(axis=1) - 0.5)
    visible = np.all(hi >= 0, axis=1) & np.all(lo <= size - 1, axis=1)
    lo = np.clip(lo, 0, size - 1).astype(np.int64)
    hi = np.clip(hi, 0, size - 1).astype(np.int64)
    hi[~visible] = lo[~visible] - 1

    face_index = np.full((size, size), -1, dtype=np.int64)
    bary_map = np.zeros((size, size, 3))
    face, cx, cy = bbox_cells(lo[:, 0], hi[:, 0], lo[:, 1], hi[:, 1])
    if not len(face):
        return Fragments(face_index, bary_map)

    p = np.stack([cx + 0.5, cy + 0.5], axis=1)
    t = tri[face]
    bary, _ = barycentric(p, t[:, 0], t[:, 1], t[:, 2])
    hit = inside(bary)
    face, cx, cy, bary = face[hit], cx[hit], cy[hit], bary[hit]
    frag_depth = np.einsum("mi,mi->m", bary, z[faces[face]])

    pixel = cy * size + cx
    order = np.lexsort((face, -frag_depth, pixel))
    pixel, face, bary = pixel[order], face[order], bary[order]
    first = np.ones(len(pixel), dtype=bool)
    first[1:] = pixel[1:] != pixel[:-1]

    face_index.reshape(-1)[pixel[first]] = face[first]
    bary_map.reshape(-1, 3)[pixel[first]] = bary[first]
    return Fragments(face_index, bary_map)


def render_mask(vertices: np.ndarray, faces: np.ndarray, camera: Camera) -> np.ndarray:
    """Hard silhouette: True where any face covers the pixel center."""
    return rasterize(vertices, faces, camera).covered
