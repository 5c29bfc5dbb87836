# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Navier-Stokes style inpainting restricted to the UV domain.

Each iteration moves every hole texel toward

    (1 - a) * avg(u) + a * (u + step * grad(lap(u)) . perp(grad(u)))

where avg, lap and the gradients are built only from 4-neighbors inside
the working region. In the default (local) variant the working region is
the UV domain: texels outside it are never read and never written. The
global variant treats the whole grid as the working region.

Holes start from an onion-peel fill and are clamped to the [min, max] of
their known boundary texels per connected component.
"""

from typing import List, Tuple

import numpy as np
from scipy import ndimage

from garmentex import get_logger
from garmentex.errors import DomainError, ShapeMismatchError
from garmentex.geometry.uv import DomainMask
from garmentex.refine.mask import ResidualMask
from garmentex.refine.params import RefineParams
from garmentex.render.image import TextureMap

FOUR = ndimage.generate_binary_structure(2, 1)
# (dy, dx) offsets of the 4-neighborhood
OFFSETS = ((-1, 0), (1, 0), (0, -1), (0, 1))


def _shift(values: np.ndarray, dy: int, dx: int, fill=0):
    """out[y, x] = values[y + dy, x + dx], `fill` past the grid edge."""
    out = np.full_like(values, fill)
    h, w = values.shape[:2]
    ys_dst = slice(max(-dy, 0), h - max(dy, 0))
    xs_dst = slice(max(-dx, 0), w - max(dx, 0))
    ys_src = slice(max(dy, 0), h - max(-dy, 0))
    xs_src = slice(max(dx, 0), w - max(-dx, 0))
    out[ys_dst, xs_dst] = values[ys_src, xs_src]
    return out


class _Stencil:
    """Region-restricted neighbor access."""

    def __init__(self, region: np.ndarray):
        self.region = region
        self.valid = {off: _shift(region, *off, fill=False) & region for off in OFFSETS}
        count = sum(v.astype(np.float64) for v in self.valid.values())
        self.count = np.maximum(count, 1.0)[:, :, None]

    def neighbor(self, u: np.ndarray, off) -> Tuple[np.ndarray, np.ndarray]:
        valid = self.valid[off]
        return np.where(valid[:, :, None], _shift(u, *off), 0.0), valid

    def average(self, u: np.ndarray) -> np.ndarray:
        total = np.zeros_like(u)
        for off in OFFSETS:
            total += self.neighbor(u, off)[0]
        return total / self.count

    def derivative(self, u: np.ndarray, axis: int) -> np.ndarray:
        """Central difference, one-sided at region borders, 0 if isolated."""
        back, fwd = ((-1, 0), (1, 0)) if axis == 0 else ((0, -1), (0, 1))
        u_b, v_b = self.neighbor(u, back)
        u_f, v_f = self.neighbor(u, fwd)
        both = (v_b & v_f)[:, :, None]
        only_f = (v_f & ~v_b)[:, :, None]
        only_b = (v_b & ~v_f)[:, :, None]
        return np.where(both, 0.5 * (u_f - u_b),
                        np.where(only_f, u_f - u, np.where(only_b, u - u_b, 0.0)))


def _onion_peel(u: np.ndarray, hole: np.ndarray, stencil: _Stencil) -> np.ndarray:
    known = stencil.region & ~hole
    fallback = u[known].mean(axis=0) if known.any() else np.full(u.shape[2], 0.5)
    remaining = hole.copy()
    while remaining.any():
        total = np.zeros_like(u)
        count = np.zeros(hole.shape)
        for off in OFFSETS:
            values, valid = stencil.neighbor(u, off)
            ok = valid & _shift(known, *off, fill=False)
            total += np.where(ok[:, :, None], values, 0.0)
            count += ok
        front = remaining & (count > 0)
        if not front.any():
            # components with no known boundary
            u[remaining] = fallback
            break
        u[front] = total[front] / count[front][:, None]
        known = known | front
        remaining = remaining & ~front
    return u


def _component_bounds(u: np.ndarray, hole: np.ndarray, region: np.ndarray):
    """Per-texel [lo, hi] from the known ring around each hole component."""
    lo = np.full(u.shape, -np.inf)
    hi = np.full(u.shape, np.inf)
    labels, count = ndimage.label(hole, structure=FOUR)
    known = region & ~hole
    for index, box in enumerate(ndimage.find_objects(labels), start=1):
        if box is None:
            continue
        pad = tuple(slice(max(s.start - 1, 0), s.stop + 1) for s in box)
        comp = labels[pad] == index
        ring = ndimage.binary_dilation(comp, structure=FOUR) & known[pad]
        if not ring.any():
            continue
        ring_values = u[pad][ring]
        lo[pad][comp] = ring_values.min(axis=0)
        hi[pad][comp] = ring_values.max(axis=0)
    return lo, hi


def inpaint_ns(texture: TextureMap, mask: ResidualMask, domain: DomainMask,
               params: RefineParams) -> TextureMap:
    """Fill `mask.hole`; every other texel is returned bitwise unchanged."""
    if texture.resolution != mask.resolution or mask.resolution != domain.resolution:
        raise ShapeMismatchError("texture, mask and domain resolutions differ")
    hole = mask.hole
    if np.any(hole & ~domain.inside):
        raise DomainError("hole escapes the UV domain")
    original = texture.values
    if not hole.any():
        return texture

    region = domain.inside if params.constrain_to_domain else np.ones_like(hole)
    stencil = _Stencil(region)
    u = np.where(region[:, :, None], original, 0.0)
    u = _onion_peel(u, hole, stencil)
    lo, hi = _component_bounds(u, hole, region)
    u = np.where(hole[:, :, None], np.clip(u, lo, hi), u)

    a, step = params.ns_transport_weight, params.ns_step
    h3 = hole[:, :, None]
    for _ in range(params.ns_iterations):
        avg = stencil.average(u)
        lap = avg - u
        transport = (-stencil.derivative(lap, 1) * stencil.derivative(u, 0)
                     + stencil.derivative(lap, 0) * stencil.derivative(u, 1))
        update = (1.0 - a) * avg + a * (u + step * transport)
        u = np.where(h3, np.clip(update, lo, hi), u)

    get_logger().debug("inpainted", {"hole_texels": int(hole.sum()),
                                     "local": params.constrain_to_domain})
    return TextureMap(np.where(h3, u, original))
