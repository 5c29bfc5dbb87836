# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

from .camera import (
    VIEWS,
    Camera,
    depth,
    ndc,
    ndc_jacobian,
    pixel_centers_ndc,
    project,
    projection_jacobian,
)
from .image import (
    Image,
    TextureMap,
    read_gray,
    read_image,
    read_mask,
    resize_image,
    read_texture,
    require_same_shape,
    to_uint8,
    write_image,
    write_mask,
)
from .raster import Fragments, rasterize, render_mask
from .silhouette import DEFAULT_SIGMA, SilhouetteContext, render_silhouette
from .textured import (
    CoverageMap,
    SamplingOperator,
    bilinear_weights,
    coverage_from_operators,
    read_coverage,
    render_textured,
    sampling_operator,
    texel_coverage,
    write_coverage,
)

__all__ = [
    "VIEWS",
    "Camera",
    "depth",
    "ndc",
    "ndc_jacobian",
    "pixel_centers_ndc",
    "project",
    "projection_jacobian",
    "Image",
    "TextureMap",
    "read_gray",
    "read_image",
    "read_mask",
    "resize_image",
    "read_texture",
    "require_same_shape",
    "to_uint8",
    "write_image",
    "write_mask",
    "Fragments",
    "rasterize",
    "render_mask",
    "DEFAULT_SIGMA",
    "SilhouetteContext",
    "render_silhouette",
    "CoverageMap",
    "SamplingOperator",
    "bilinear_weights",
    "coverage_from_operators",
    "read_coverage",
    "render_textured",
    "sampling_operator",
    "texel_coverage",
    "write_coverage",
]
