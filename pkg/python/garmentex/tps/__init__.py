# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

from .bake import landmark_uvs, solve_view_warp, tps_bake_texture
from .warp import (
    DEFAULT_REGULARIZATION,
    TpsWarp,
    bending_energy,
    tps_apply,
    tps_kernel,
    tps_solve,
)

__all__ = [
    "landmark_uvs",
    "solve_view_warp",
    "tps_bake_texture",
    "DEFAULT_REGULARIZATION",
    "TpsWarp",
    "bending_energy",
    "tps_apply",
    "tps_kernel",
    "tps_solve",
]
