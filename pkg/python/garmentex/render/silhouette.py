# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Soft silhouette rasterizer.

Each face contributes D_j(p) = sigmoid(sign_j(p) * d^2(p, tri_j) / sigma)
at pixel center p, where d is the distance to the projected triangle's
boundary in NDC and sign is +1 inside. Contributions aggregate as

    S(p) = 1 - prod_j (1 - D_j(p))

evaluated in log space: log(1 - sigmoid(x)) = -softplus(x). Pairs farther
than sqrt(CUTOFF * sigma) outside a face are skipped; their D is below
sigmoid(-CUTOFF).
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.special import expit

from garmentex.errors import ParameterError
from garmentex.geometry.triangles import barycentric, bbox_cells, inside
from garmentex.render.camera import Camera, ndc, ndc_jacobian, pixel_centers_ndc
from garmentex.render.image import Image

DEFAULT_SIGMA = 1e-4
CUTOFF = 25.0


@dataclass(frozen=True)
class SilhouetteContext:
    """Saved pair terms for the vertex backward pass."""
    camera: Camera
    num_vertices: int
    pixel: np.ndarray
    seg_a: np.ndarray
    seg_b: np.ndarray
    t: np.ndarray
    diff: np.ndarray
    dsig: np.ndarray
    transmittance: np.ndarray
    sigma: float

    def backward(self, grad_image: np.ndarray) -> np.ndarray:
        """dL/dS (H, W) -> dL/dvertices (N, 3)."""
        g_pix = np.asarray(grad_image, dtype=np.float64).reshape(-1)
        # dS/dx = prod(1 - D) * sigmoid(x); dx/d(d^2) = sign / sigma
        coeff = g_pix[self.pixel] * self.transmittance[self.pixel] * self.dsig / self.sigma
        ga = (-2.0 * (1.0 - self.t) * coeff)[:, None] * self.diff
        gb = (-2.0 * self.t * coeff)[:, None] * self.diff
        grad_ndc = np.zeros((self.num_vertices, 2))
        np.add.at(grad_ndc, self.seg_a, ga)
        np.add.at(grad_ndc, self.seg_b, gb)
        return grad_ndc @ ndc_jacobian(self.camera)


def _segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray):
    """Squared distance from p to segment ab, the clamped parameter and p - q."""
    ab = b - a
    denom = np.einsum("mi,mi->m", ab, ab)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(denom > 0, np.einsum("mi,mi->m", p - a, ab) / denom, 0.0)
    t = np.clip(t, 0.0, 1.0)
    diff = p - (a + t[:, None] * ab)
    return np.einsum("mi,mi->m", diff, diff), t, diff


def render_silhouette(vertices: np.ndarray, faces: np.ndarray, camera: Camera,
                      sigma: float = DEFAULT_SIGMA) -> Tuple[Image, SilhouetteContext]:
    if not sigma > 0:
        raise ParameterError("sigma must be > 0")
    vertices = np.asarray(vertices, dtype=np.float64)
    faces = np.asarray(faces, dtype=np.int64)
    size = camera.image_size
    centers = pixel_centers_ndc(size)
    step = 2.0 / size

    tri = ndc(camera, vertices)[faces]
    margin = np.sqrt(CUTOFF * sigma)
    # pixel index i has center -1 + (i + 0.5) * step
    lo = np.ceil((tri.min(axis=1) - margin + 1.0) / step - 0.5)
    hi = np.floor((tri.max(axis=1) + margin + 1.0) / step - 0.5)
    visible = np.all(hi >= 0, axis=1) & np.all(lo <= size - 1, axis=1)
    lo = np.clip(lo, 0, size - 1).astype(np.int64)
    hi = np.clip(hi, 0, size - 1).astype(np.int64)
    hi[~visible] = lo[~visible] - 1
    face, cx, cy = bbox_cells(lo[:, 0], hi[:, 0], lo[:, 1], hi[:, 1])

    p = np.stack([centers[cx], centers[cy]], axis=1)
    t3 = tri[face]
    bary, _ = barycentric(p, t3[:, 0], t3[:, 1], t3[:, 2])
    sign = np.where(inside(bary, eps=0.0), 1.0, -1.0)

    # distance to the nearest of the three edges
    best_d2 = np.full(len(face), np.inf)
    best_t = np.zeros(len(face))
    best_diff = np.zeros((len(face), 2))
    best_edge = np.zeros(len(face), dtype=np.int64)
    for e in range(3):
        d2, t, diff = _segment_distance(p, t3[:, e], t3[:, (e + 1) % 3])
        better = d2 < best_d2
        best_d2 = np.where(better, d2, best_d2)
        best_t = np.where(better, t, best_t)
        best_diff = np.where(better[:, None], diff, best_diff)
        best_edge = np.where(better, e, best_edge)

    x = sign * best_d2 / sigma
    keep = x > -CUTOFF
    face, x, sign = face[keep], x[keep], sign[keep]
    best_t, best_diff, best_edge = best_t[keep], best_diff[keep], best_edge[keep]
    pixel = cy[keep] * size + cx[keep]

    log_transmittance = np.zeros(size * size)
    np.add.at(log_transmittance, pixel, -np.logaddexp(0.0, x))
    transmittance = np.exp(log_transmittance)
    silhouette = (1.0 - transmittance).reshape(size, size)

    context = SilhouetteContext(
        camera=camera,
        num_vertices=len(vertices),
        pixel=pixel,
        seg_a=faces[face, best_edge],
        seg_b=faces[face, (best_edge + 1) % 3],
        t=best_t,
        diff=best_diff,
        dsig=sign * expit(x),
        transmittance=transmittance,
        sigma=float(sigma),
    )
    return Image(silhouette), context
