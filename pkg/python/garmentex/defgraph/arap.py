# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

from typing import Tuple

import numpy as np

from garmentex.errors import ShapeMismatchError
from garmentex.defgraph.graph import DeformationGraph, GraphParams
from garmentex.defgraph.rotation import rodrigues, rodrigues_jacobian


def arap_residuals(graph: DeformationGraph, params: GraphParams) -> np.ndarray:
    """r_jk = (R_j - I)(g_k - g_j) + T_j - T_k for every directed edge."""
    if params.num_nodes != graph.num_nodes:
        raise ShapeMismatchError("params do not match graph")
    edges = graph.edges
    j, k = edges[:, 0], edges[:, 1]
    d = graph.node_positions[k] - graph.node_positions[j]
    R = rodrigues(params.axis_angles) - np.eye(3)
    return np.einsum("eab,eb->ea", R[j], d) + params.translations[j] - params.translations[k]


def e_arap(graph: DeformationGraph, params: GraphParams) -> Tuple[float, GraphParams]:
    """Mean squared rigidity residual over directed neighbor edges, with gradient."""
    edges = graph.edges
    if not len(edges):
        return 0.0, GraphParams.identity(graph.num_nodes)
    r = arap_residuals(graph, params)
    count = len(edges)
    energy = float(np.einsum("ea,ea->", r, r) / count)

    j, k = edges[:, 0], edges[:, 1]
    g = 2.0 * r / count
    grad_t = np.zeros((graph.num_nodes, 3))
    np.add.at(grad_t, j, g)
    np.add.at(grad_t, k, -g)

    d = graph.node_positions[k] - graph.node_positions[j]
    H = np.zeros((graph.num_nodes, 3, 3))
    np.add.at(H, j, np.einsum("ea,eb->eab", g, d))
    grad_a = np.einsum("kab,kmab->km", H, rodrigues_jacobian(params.axis_angles))
    return energy, GraphParams(grad_a, grad_t)
