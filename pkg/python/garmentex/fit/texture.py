# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Stage 2: texture recovery with frozen geometry.

    E = w_img * mean_masked ||I_in - A T||^2 + w_tv * sum_views E_tv(A T)
        [+ w_uv_tv * E_tv(T) over domain texels]

Rendering is linear in T, so the objective is convex. The image term is
averaged over target-silhouette pixels of both views together. Image TV
only counts differences between rendered pixels inside the target
silhouette.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional

import numpy as np

from garmentex import get_logger
from garmentex.fit.config import FitConfig
from garmentex.fit.energies import e_img, e_tv
from garmentex.fit.observation import Observation, require_views
from garmentex.fit.optim import Adam
from garmentex.geometry.mesh import TemplateMesh
from garmentex.geometry.uv import DomainMask, rasterize_uv_domain
from garmentex.render.image import TextureMap
from garmentex.render.textured import CoverageMap, coverage_from_operators, sampling_operator


@dataclass(frozen=True)
class TextureFit:
    texture: TextureMap
    coverage: CoverageMap
    trace: List[Dict[str, float]] = field(default_factory=list)


def recover_texture(vertices: np.ndarray, mesh: TemplateMesh,
                    observations: Mapping[str, Observation], config: FitConfig,
                    domain: Optional[DomainMask] = None) -> TextureFit:
    logger = get_logger()
    observations = require_views(observations)
    resolution = config.texture_resolution
    if domain is None:
        domain = rasterize_uv_domain(mesh, resolution)

    operators, targets, masks, tv_masks = [], [], [], []
    for obs in observations.values():
        op = sampling_operator(vertices, mesh.faces, mesh.corner_uvs, obs.camera, resolution)
        operators.append(op)
        targets.append(obs.image.values if obs.image.channels == 3
                       else np.repeat(obs.image.values, 3, axis=2))
        masks.append(obs.target_mask)
        tv_masks.append(obs.target_mask & op.covered)
    pixel_count = int(sum(m.sum() for m in masks))
    coverage = coverage_from_operators(operators, pixel_masks=masks, domain=domain)

    texels = np.full((resolution, resolution, 3), config.texture_init)
    adam = Adam(config.lr_texture, config.adam_beta1, config.adam_beta2, config.adam_eps)
    steps = config.steps_stage2
    trace: List[Dict[str, float]] = []

    logger.info("stage 2 start", {"resolution": resolution, "steps": steps,
                                  "covered_texels": int(coverage.covered.sum())})
    for step in range(steps):
        grad = np.zeros_like(texels)
        terms = {"e_img": 0.0, "e_tv": 0.0, "e_uv_tv": 0.0}
        for op, target, mask, tv_mask in zip(operators, targets, masks, tv_masks):
            rendered = op.render(texels)
            grad_image = np.zeros_like(rendered)
            if config.w_img > 0:
                value, g = e_img(rendered, target, mask, pixel_count)
                terms["e_img"] += value
                grad_image += config.w_img * g
            if config.w_tv > 0:
                value, g = e_tv(rendered, tv_mask)
                terms["e_tv"] += value
                grad_image += config.w_tv * g
            grad += op.backproject(grad_image)
        if config.w_uv_tv > 0:
            value, g = e_tv(texels, domain.inside)
            terms["e_uv_tv"] = value
            grad += config.w_uv_tv * g

        total = (config.w_img * terms["e_img"] + config.w_tv * terms["e_tv"]
                 + config.w_uv_tv * terms["e_uv_tv"])
        trace.append({"stage": 2, "step": step, "total": total, **terms})
        if step % config.log_every == 0:
            logger.optim("stage 2", {"step": step, "total": total, **terms})
        texels = adam.step(texels, grad)

    texture = TextureMap(np.clip(texels, 0.0, 1.0))
    logger.info("stage 2 done", {"total": trace[-1]["total"]})
    return TextureFit(texture, coverage, trace)
