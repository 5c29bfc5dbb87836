# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

from .batch import WORKERS_ENV, Batch, Runner, default_workers, run_batch
from .evaluate import METHODS, STAGES, EvalReport, evaluate, evaluate_sample
from .metrics import gaussian_window, mask_iou, psnr, ssim, ssim_map
from .simulate import (
    SampleFailure,
    SampleRecord,
    SimResult,
    SimSpec,
    load_dataset,
    load_sample,
    render_views,
    simulate_pairs,
    simulate_sample,
    write_sample,
)
from .textures import GENERATORS, TextureRecipe, gen_texture

__all__ = [
    "WORKERS_ENV",
    "Batch",
    "Runner",
    "default_workers",
    "run_batch",
    "METHODS",
    "STAGES",
    "EvalReport",
    "evaluate",
    "evaluate_sample",
    "gaussian_window",
    "mask_iou",
    "psnr",
    "ssim",
    "ssim_map",
    "SampleFailure",
    "SampleRecord",
    "SimResult",
    "SimSpec",
    "load_dataset",
    "load_sample",
    "render_views",
    "simulate_pairs",
    "simulate_sample",
    "write_sample",
    "GENERATORS",
    "TextureRecipe",
    "gen_texture",
]
