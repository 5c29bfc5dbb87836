# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Residual (hole) masks.

The core is every domain texel with coverage below tau_c. The hole is the
core dilated by `dilation_radius` texels inside the domain. Feather is 1 on
the core and ramps linearly to 0 across the dilation band:
feather = 1 - d / (radius + 1), d the distance to the nearest core texel.
"""

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from garmentex.errors import DomainError, ParameterError, ShapeMismatchError
from garmentex.geometry.uv import DomainMask
from garmentex.refine.params import RefineParams
from garmentex.render.textured import CoverageMap


@dataclass(frozen=True)
class ResidualMask:
    resolution: int
    hole: np.ndarray
    feather: np.ndarray

    def __post_init__(self):
        hole = np.array(self.hole, dtype=bool)
        feather = np.array(self.feather, dtype=np.float64)
        shape = (self.resolution, self.resolution)
        if hole.shape != shape or feather.shape != shape:
            raise ShapeMismatchError(f"mask arrays must be {shape}")
        if feather.min() < 0 or feather.max() > 1:
            raise ParameterError("feather must lie in [0, 1]")
        if np.any(feather[~hole] > 0):
            raise ParameterError("feather must be 0 outside the hole")
        hole.setflags(write=False)
        feather.setflags(write=False)
        object.__setattr__(self, "hole", hole)
        object.__setattr__(self, "feather", feather)

    @property
    def fraction(self) -> float:
        return float(self.hole.mean())

    def fraction_of(self, domain: DomainMask) -> float:
        return float(self.hole.sum()) / max(domain.count, 1)

    @classmethod
    def empty(cls, resolution: int) -> "ResidualMask":
        shape = (resolution, resolution)
        return cls(resolution, np.zeros(shape, dtype=bool), np.zeros(shape))


def mask_from_core(core: np.ndarray, domain: DomainMask, radius: int) -> ResidualMask:
    core = np.asarray(core, dtype=bool) & domain.inside
    if not core.any():
        return ResidualMask.empty(domain.resolution)
    dist = ndimage.distance_transform_edt(~core)
    hole = (dist <= radius) & domain.inside
    feather = np.where(hole, np.clip(1.0 - dist / (radius + 1.0), 0.0, 1.0), 0.0)
    feather[core] = 1.0
    return ResidualMask(domain.resolution, hole, feather)


def coverage_threshold(coverage: CoverageMap, params: RefineParams) -> float:
    if params.coverage_threshold > 0:
        return params.coverage_threshold
    nonzero = coverage.weight[coverage.weight > 0]
    if not len(nonzero):
        return np.inf
    return params.coverage_fraction * float(nonzero.mean())


def residual_mask(coverage: CoverageMap, domain: DomainMask,
                  params: RefineParams) -> ResidualMask:
    if coverage.resolution != domain.resolution:
        raise ShapeMismatchError(
            f"coverage is {coverage.resolution}^2 but domain is {domain.resolution}^2")
    core = domain.inside & (coverage.weight < coverage_threshold(coverage, params))
    mask = mask_from_core(core, domain, params.dilation_radius)
    if np.any(mask.hole & ~domain.inside):
        raise DomainError("residual mask escapes the UV domain")
    return mask
