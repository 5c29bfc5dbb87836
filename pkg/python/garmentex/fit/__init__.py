# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

from .config import FitConfig
from .energies import e_img, e_lmk, e_norm, e_sil, e_tv
from .observation import (
    Observation,
    load_landmark_observations,
    require_views,
    write_landmark_observations,
)
from .optim import Adam, cosine_decay
from .pipeline import FitResult, phase1
from .scaling import auto_scale, mask_iou, scale_candidates
from .shape import ShapeFit, fit_shape, shape_energy
from .texture import TextureFit, recover_texture

__all__ = [
    "FitConfig",
    "e_img",
    "e_lmk",
    "e_norm",
    "e_sil",
    "e_tv",
    "Observation",
    "load_landmark_observations",
    "require_views",
    "write_landmark_observations",
    "Adam",
    "cosine_decay",
    "FitResult",
    "phase1",
    "auto_scale",
    "mask_iou",
    "scale_candidates",
    "ShapeFit",
    "fit_shape",
    "shape_energy",
    "TextureFit",
    "recover_texture",
]
