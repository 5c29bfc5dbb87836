# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""Phase I: automatic scaling, shape fit, then texture recovery."""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping

import numpy as np

from garmentex import get_logger
from garmentex.defgraph.graph import GraphParams, build_graph
from garmentex.fit.config import FitConfig
from garmentex.fit.observation import Observation, require_views
from garmentex.fit.scaling import auto_scale
from garmentex.fit.shape import fit_shape
from garmentex.fit.texture import recover_texture
from garmentex.geometry.mesh import TemplateMesh
from garmentex.geometry.uv import DomainMask, rasterize_uv_domain
from garmentex.render.image import TextureMap
from garmentex.render.textured import CoverageMap


@dataclass(frozen=True)
class FitResult:
    vertices: np.ndarray
    params: GraphParams
    scale: float
    coarse: TextureMap
    coverage: CoverageMap
    domain: DomainMask
    trace: List[Dict[str, float]] = field(default_factory=list)

    def __post_init__(self):
        stage1 = [row["total"] for row in self.trace if row["stage"] == 1]
        if not np.all(np.isfinite(stage1)):
            raise ValueError("stage 1 energy trace must be finite")

    @property
    def energy_trace(self) -> List[float]:
        return [row["total"] for row in self.trace]


def phase1(mesh: TemplateMesh, observations: Mapping[str, Observation],
           config: FitConfig) -> FitResult:
    observations = require_views(observations)
    graph = build_graph(mesh, config.downsample_factor, config.node_neighbor_count,
                        config.skin_node_count)
    scale = 1.0
    if config.auto_scale:
        scale = auto_scale(mesh, observations["front"], config.scale_min,
                           config.scale_max, config.scale_step)
    # Farthest-point sampling and nearest-node skinning are scale invariant.
    scaled_mesh, scaled_graph = mesh.scaled(scale), graph.scaled(scale)

    shape = fit_shape(scaled_mesh, scaled_graph, observations, config)
    domain = rasterize_uv_domain(mesh, config.texture_resolution)
    texture = recover_texture(shape.vertices, mesh, observations, config, domain)
    get_logger().info("phase 1 done", {"scale": scale,
                                       "covered_fraction": float(texture.coverage.covered.sum())
                                       / max(domain.count, 1)})
    return FitResult(shape.vertices, shape.params, scale, texture.texture, texture.coverage,
                     domain, shape.trace + texture.trace)
