# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

from .arap import arap_residuals, e_arap
from .graph import (
    DeformationGraph,
    GraphParams,
    build_graph,
    deform,
    deform_backward,
    farthest_point_sample,
)
from .rotation import rodrigues, rodrigues_jacobian, skew

__all__ = [
    "arap_residuals",
    "e_arap",
    "DeformationGraph",
    "GraphParams",
    "build_graph",
    "deform",
    "deform_backward",
    "farthest_point_sample",
    "rodrigues",
    "rodrigues_jacobian",
    "skew",
]
