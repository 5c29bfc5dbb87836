# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

from .bilateral import bilateral
from .blend import RefineResult, composite, refine, refine_from_coverage, refine_texture
from .inpaint import inpaint_ns
from .mask import ResidualMask, coverage_threshold, mask_from_core, residual_mask
from .params import RefineParams

__all__ = [
    "bilateral",
    "RefineResult",
    "composite",
    "refine",
    "refine_from_coverage",
    "refine_texture",
    "inpaint_ns",
    "ResidualMask",
    "coverage_threshold",
    "mask_from_core",
    "residual_mask",
    "RefineParams",
]
