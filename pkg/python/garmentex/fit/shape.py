# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Stage 1: silhouette and landmark registration over deformation-graph
parameters.

    E = w_sil * sum_views E_sil + w_lmk * sum_views E_lmk
        + w_arap(t) * E_arap + w_norm(t) * E_norm

w_arap and w_norm follow a cosine decay from their start to end values. Each
view's E_sil renders only the chart facing that camera (`facing_faces`).
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional

import numpy as np

from garmentex import get_logger
from garmentex.errors import DivergenceError
from garmentex.defgraph.arap import e_arap
from garmentex.defgraph.graph import DeformationGraph, GraphParams, deform, deform_backward
from garmentex.fit.config import FitConfig
from garmentex.fit.energies import e_lmk, e_norm, e_sil
from garmentex.fit.observation import Observation, require_views
from garmentex.fit.optim import Adam, cosine_decay
from garmentex.geometry.mesh import TemplateMesh, facing_faces
from garmentex.render.camera import project, projection_jacobian
from garmentex.render.silhouette import render_silhouette


@dataclass(frozen=True)
class ShapeFit:
    vertices: np.ndarray
    params: GraphParams
    trace: List[Dict[str, float]] = field(default_factory=list)

    @property
    def energy_trace(self) -> List[float]:
        return [row["total"] for row in self.trace]


def shape_energy(mesh: TemplateMesh, graph: DeformationGraph, params: GraphParams,
                 observations: Mapping[str, Observation], config: FitConfig,
                 w_arap: float, w_norm: float, sigma: float):
    """Total stage-1 energy, its per-term breakdown and the parameter gradient."""
    vertices = deform(mesh, graph, params)
    grad_v = np.zeros_like(vertices)
    terms = {"e_sil": 0.0, "e_lmk": 0.0, "e_arap": 0.0, "e_norm": 0.0}

    for obs in observations.values():
        if config.w_sil > 0:
            sil, ctx = render_silhouette(vertices, facing_faces(mesh, obs.view), obs.camera,
                                         sigma)
            value, grad_s = e_sil(sil.plane, obs.silhouette.plane)
            terms["e_sil"] += value
            grad_v += config.w_sil * ctx.backward(grad_s)
        if config.w_lmk > 0 and obs.landmarks_2d:
            idx, targets = obs.landmark_arrays(mesh)
            value, grad_p = e_lmk(project(obs.camera, vertices[idx]), targets,
                                  obs.camera.image_size)
            terms["e_lmk"] += value
            np.add.at(grad_v, idx, config.w_lmk * grad_p @ projection_jacobian(obs.camera))

    if w_norm > 0:
        value, grad_n = e_norm(mesh, vertices)
        terms["e_norm"] = value
        grad_v += w_norm * grad_n

    grad = deform_backward(mesh, graph, params, grad_v).to_vector()
    if w_arap > 0:
        value, grad_a = e_arap(graph, params)
        terms["e_arap"] = value
        grad = grad + w_arap * grad_a.to_vector()

    total = (config.w_sil * terms["e_sil"] + config.w_lmk * terms["e_lmk"]
             + w_arap * terms["e_arap"] + w_norm * terms["e_norm"])
    return total, terms, grad


def fit_shape(mesh: TemplateMesh, graph: DeformationGraph,
              observations: Mapping[str, Observation], config: FitConfig,
              initial: Optional[GraphParams] = None) -> ShapeFit:
    logger = get_logger()
    observations = require_views(observations)
    for obs in observations.values():
        obs.landmark_arrays(mesh)

    params = initial or GraphParams.identity(graph.num_nodes)
    x = params.to_vector()
    adam = Adam(config.lr_graph, config.adam_beta1, config.adam_beta2, config.adam_eps)
    steps = config.steps_stage1
    trace: List[Dict[str, float]] = []

    logger.info("stage 1 start", {"nodes": graph.num_nodes, "steps": steps})
    for step in range(steps):
        w_arap = cosine_decay(config.w_arap, config.w_arap_end, step, steps)
        w_norm = cosine_decay(config.w_norm, config.w_norm_end, step, steps)
        adam.lr = cosine_decay(config.lr_graph, config.lr_graph_end, step, steps)
        total, terms, grad = shape_energy(mesh, graph, GraphParams.from_vector(x),
                                          observations, config, w_arap, w_norm, config.sigma)
        trace.append({"stage": 1, "step": step, "total": total, **terms})
        if not (np.isfinite(total) and np.all(np.isfinite(grad))):
            raise DivergenceError(f"stage 1 diverged at step {step}",
                                  [row["total"] for row in trace])
        if step % config.log_every == 0:
            logger.optim("stage 1", {"step": step, "total": total, **terms})
        x = adam.step(x, grad)
        if not np.all(np.isfinite(x)):
            raise DivergenceError(f"stage 1 parameters became non-finite at step {step}",
                                  [row["total"] for row in trace])

    params = GraphParams.from_vector(x)
    vertices = deform(mesh, graph, params)
    logger.info("stage 1 done", {"total": trace[-1]["total"]})
    return ShapeFit(vertices, params, trace)
