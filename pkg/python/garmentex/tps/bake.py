# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
TPS texture baking.

Per view, a spline maps the UV positions of the template landmarks (in
texel coordinates) onto the detected image landmarks. Every domain texel
whose face belongs to that view's chart samples the image at its warped
location. Texels that land outside the view's silhouette are missing and
form the residual mask; occlusion is invisible to the warp.
"""

from typing import Dict, Mapping, Optional, Tuple

import numpy as np

from garmentex import get_logger
from garmentex.errors import LandmarkError, SingularSystemError
from garmentex.fit.observation import Observation
from garmentex.geometry.mesh import VIEW_SIDE, TemplateMesh, face_sides
from garmentex.geometry.uv import DomainMask, rasterize_uv_domain, uv_to_texel
from garmentex.refine.mask import ResidualMask, mask_from_core
from garmentex.render.image import TextureMap
from garmentex.tps.warp import DEFAULT_REGULARIZATION, TpsWarp, tps_apply, tps_solve


def landmark_uvs(mesh: TemplateMesh, view: str) -> Dict[str, np.ndarray]:
    """UV of each landmark vertex in the chart of the given side."""
    sides = face_sides(mesh)
    side = VIEW_SIDE[view]
    out = {}
    for name, vertex in mesh.landmark_indices.items():
        face, corner = np.nonzero((mesh.faces == vertex) & (sides == side)[:, None])
        if len(face):
            out[name] = mesh.uvs[mesh.face_uvs[face[0], corner[0]]]
    return out


def solve_view_warp(mesh: TemplateMesh, observation: Observation, resolution: int,
                    regularization: float = DEFAULT_REGULARIZATION) -> TpsWarp:
    uvs = landmark_uvs(mesh, observation.view)
    names = [n for n in observation.landmark_names if n in uvs]
    if len(names) < 3:
        raise LandmarkError(
            f"{observation.view} view has {len(names)} usable landmarks, TPS needs 3")
    src = uv_to_texel(np.array([uvs[n] for n in names]), resolution)
    dst = np.array([observation.landmarks_2d[n] for n in names])
    try:
        return tps_solve(src, dst, regularization)
    except SingularSystemError as e:
        raise LandmarkError(f"{observation.view} landmarks are degenerate: {e}")


def _sample_bilinear(image: np.ndarray, pix: np.ndarray) -> np.ndarray:
    """Sample at continuous pixel coordinates (centers at i + 0.5), clamped."""
    h, w = image.shape[:2]
    x = pix[:, 0] - 0.5
    y = pix[:, 1] - 0.5
    x0, y0 = np.floor(x), np.floor(y)
    fx, fy = (x - x0)[:, None], (y - y0)[:, None]
    x0, y0 = x0.astype(np.int64), y0.astype(np.int64)
    xa, xb = np.clip(x0, 0, w - 1), np.clip(x0 + 1, 0, w - 1)
    ya, yb = np.clip(y0, 0, h - 1), np.clip(y0 + 1, 0, h - 1)
    return ((1 - fx) * (1 - fy) * image[ya, xa] + fx * (1 - fy) * image[ya, xb]
            + (1 - fx) * fy * image[yb, xa] + fx * fy * image[yb, xb])


def tps_bake_texture(mesh: TemplateMesh, observations: Mapping[str, Observation],
                     resolution: int, regularization: float = DEFAULT_REGULARIZATION,
                     dilation_radius: int = 2,
                     domain: Optional[DomainMask] = None) -> Tuple[TextureMap, ResidualMask]:
    if domain is None:
        domain = rasterize_uv_domain(mesh, resolution)
    sides = face_sides(mesh)
    texel_side = np.where(domain.inside, sides[np.maximum(domain.face_index, 0)], 0)
    rows, cols = np.indices((resolution, resolution))

    texels = np.zeros((resolution, resolution, 3))
    missing = np.zeros((resolution, resolution), dtype=bool)
    for view, side in VIEW_SIDE.items():
        assigned = texel_side == side
        if not assigned.any():
            continue
        observation = observations.get(view)
        if observation is None:
            raise LandmarkError(f"{view} view is required for its UV chart")
        warp = solve_view_warp(mesh, observation, resolution, regularization)
        pts = np.stack([cols[assigned], rows[assigned]], axis=1).astype(np.float64)
        pix = tps_apply(warp, pts)

        size = observation.camera.image_size
        px = np.floor(pix[:, 0]).astype(np.int64)
        py = np.floor(pix[:, 1]).astype(np.int64)
        on_image = (px >= 0) & (px < size) & (py >= 0) & (py < size)
        in_silhouette = np.zeros(len(pix), dtype=bool)
        in_silhouette[on_image] = observation.target_mask[py[on_image], px[on_image]]

        image = observation.image.values
        if image.shape[2] == 1:
            image = np.repeat(image, 3, axis=2)
        colors = _sample_bilinear(image, pix)
        colors[~in_silhouette] = 0.0
        texels[assigned] = colors
        missing[assigned] = ~in_silhouette
        get_logger().debug("tps view baked", {"view": view, "landmarks": warp.num_controls,
                                              "missing": int((~in_silhouette).sum())})

    return TextureMap(texels), mask_from_core(missing, domain, dilation_radius)
