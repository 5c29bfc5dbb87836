# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Phase II composition:

    T_fine = bilateral((1 - feather) * T_coarse + feather * T_o)

restricted to the UV domain.
"""

from dataclasses import dataclass

import numpy as np

from garmentex import get_logger
from garmentex.errors import ShapeMismatchError
from garmentex.geometry.uv import DomainMask
from garmentex.refine.bilateral import bilateral
from garmentex.refine.inpaint import inpaint_ns
from garmentex.refine.mask import ResidualMask, residual_mask
from garmentex.refine.params import RefineParams
from garmentex.render.image import TextureMap
from garmentex.render.textured import CoverageMap


def composite(coarse: TextureMap, inpainted: TextureMap, mask: ResidualMask) -> np.ndarray:
    f = mask.feather[:, :, None]
    return (1.0 - f) * coarse.values + f * inpainted.values


def refine_texture(coarse: TextureMap, inpainted: TextureMap, mask: ResidualMask,
                   params: RefineParams, domain: DomainMask) -> TextureMap:
    resolutions = {coarse.resolution, inpainted.resolution, mask.resolution, domain.resolution}
    if len(resolutions) != 1:
        raise ShapeMismatchError(f"refine inputs disagree on resolution: {sorted(resolutions)}")
    filtered = bilateral(composite(coarse, inpainted, mask), params, mask=domain.inside)
    return TextureMap(np.where(domain.inside[:, :, None], filtered, 0.0))


@dataclass(frozen=True)
class RefineResult:
    fine: TextureMap
    inpainted: TextureMap
    mask: ResidualMask


def refine(coarse: TextureMap, mask: ResidualMask, domain: DomainMask,
           params: RefineParams) -> RefineResult:
    inpainted = inpaint_ns(coarse, mask, domain, params)
    fine = refine_texture(coarse, inpainted, mask, params, domain)
    get_logger().info("refined", {"hole_fraction": mask.fraction_of(domain)})
    return RefineResult(fine, inpainted, mask)


def refine_from_coverage(coarse: TextureMap, coverage: CoverageMap, domain: DomainMask,
                         params: RefineParams) -> RefineResult:
    return refine(coarse, residual_mask(coverage, domain, params), domain, params)
