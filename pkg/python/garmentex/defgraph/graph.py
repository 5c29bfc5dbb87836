# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Embedded deformation graph.

Nodes are a farthest-point sample of the template vertices. Each vertex is
skinned to its nearest nodes and moves as the weighted blend of their rigid
transforms:

    v' = v + sum_i w_i(v) [(R(A_i) - I)(v - g_i) + T_i]

which equals sum_i w_i [R(A_i)(v - g_i) + g_i + T_i] for normalized weights
and returns `v` bitwise for identity parameters.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from garmentex.errors import MeshError, ParameterError, ShapeMismatchError
from garmentex.geometry.mesh import TemplateMesh
from garmentex.defgraph.rotation import rodrigues, rodrigues_jacobian


@dataclass(frozen=True)
class DeformationGraph:
    node_positions: np.ndarray
    node_neighbors: np.ndarray
    skin_indices: np.ndarray
    skin_weights: np.ndarray
    downsample_factor: int
    node_vertex_indices: np.ndarray

    def __post_init__(self):
        nodes = np.array(self.node_positions, dtype=np.float64).reshape(-1, 3)
        neighbors = np.array(self.node_neighbors, dtype=np.int64).reshape(len(nodes), -1)
        skin_idx = np.array(self.skin_indices, dtype=np.int64)
        skin_w = np.array(self.skin_weights, dtype=np.float64)
        if skin_idx.shape != skin_w.shape or skin_idx.ndim != 2:
            raise ShapeMismatchError("skin indices and weights must be matching (N, s) arrays")
        if np.any(neighbors == np.arange(len(nodes))[:, None]):
            raise MeshError("deformation graph has a self-loop")
        if np.any(skin_w < 0):
            raise MeshError("skin weights must be non-negative")
        for arr in (nodes, neighbors, skin_idx, skin_w):
            arr.setflags(write=False)
        object.__setattr__(self, "node_positions", nodes)
        object.__setattr__(self, "node_neighbors", neighbors)
        object.__setattr__(self, "skin_indices", skin_idx)
        object.__setattr__(self, "skin_weights", skin_w)
        object.__setattr__(self, "node_vertex_indices",
                           np.array(self.node_vertex_indices, dtype=np.int64))

    @property
    def num_nodes(self) -> int:
        return len(self.node_positions)

    @property
    def num_vertices(self) -> int:
        return len(self.skin_indices)

    @property
    def edges(self) -> np.ndarray:
        """(E, 2) directed node pairs (j, k) for every neighbor k of j."""
        m = self.node_neighbors.shape[1]
        src = np.repeat(np.arange(self.num_nodes), m)
        return np.stack([src, self.node_neighbors.reshape(-1)], axis=1)

    def scaled(self, scale: float) -> "DeformationGraph":
        """Same graph embedded in a uniformly scaled template."""
        return DeformationGraph(self.node_positions * float(scale), self.node_neighbors,
                                self.skin_indices, self.skin_weights,
                                self.downsample_factor, self.node_vertex_indices)


@dataclass(frozen=True)
class GraphParams:
    """Per-node axis-angle rotation A and translation T."""
    axis_angles: np.ndarray
    translations: np.ndarray

    def __post_init__(self):
        a = np.array(self.axis_angles, dtype=np.float64).reshape(-1, 3)
        t = np.array(self.translations, dtype=np.float64).reshape(-1, 3)
        if a.shape != t.shape:
            raise ShapeMismatchError("axis_angles and translations must have equal length")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(t))):
            raise ParameterError("graph parameters must be finite")
        object.__setattr__(self, "axis_angles", a)
        object.__setattr__(self, "translations", t)

    @classmethod
    def identity(cls, num_nodes: int) -> "GraphParams":
        return cls(np.zeros((num_nodes, 3)), np.zeros((num_nodes, 3)))

    @classmethod
    def from_vector(cls, vector: np.ndarray) -> "GraphParams":
        x = np.asarray(vector, dtype=np.float64).reshape(2, -1, 3)
        return cls(x[0], x[1])

    @property
    def num_nodes(self) -> int:
        return len(self.axis_angles)

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.axis_angles.reshape(-1), self.translations.reshape(-1)])


def farthest_point_sample(points: np.ndarray, count: int, seed_index: int = 0) -> np.ndarray:
    """Greedy farthest-point sampling; ties go to the lowest index."""
    points = np.asarray(points, dtype=np.float64)
    chosen = np.empty(count, dtype=np.int64)
    chosen[0] = seed_index
    dist = np.linalg.norm(points - points[seed_index], axis=1)
    for i in range(1, count):
        chosen[i] = int(np.argmax(dist))
        dist = np.minimum(dist, np.linalg.norm(points - points[chosen[i]], axis=1))
    return chosen


def _query(tree: cKDTree, points: np.ndarray, count: int):
    dist, idx = tree.query(points, k=list(range(1, count + 1)))
    return np.asarray(dist).reshape(len(points), count), np.asarray(idx).reshape(len(points), count)


def build_graph(mesh: TemplateMesh, downsample_factor: int = 20,
                node_neighbor_count: int = 6, skin_node_count: int = 4) -> DeformationGraph:
    """Sample k = ceil(N / factor) nodes, link neighbors and skin vertices."""
    if downsample_factor < 2:
        raise ParameterError("downsample_factor must be >= 2")
    if node_neighbor_count < 1 or skin_node_count < 1:
        raise ParameterError("neighbor and skin counts must be >= 1")
    n = mesh.num_vertices
    if n < downsample_factor:
        raise MeshError(f"mesh has {n} vertices, fewer than downsample factor {downsample_factor}")

    k = math.ceil(n / downsample_factor)
    node_idx = farthest_point_sample(mesh.vertices, k)
    nodes = mesh.vertices[node_idx]
    tree = cKDTree(nodes)

    m = min(node_neighbor_count, k - 1)
    if m > 0:
        _, nbr = _query(tree, nodes, m + 1)
        neighbors = np.empty((k, m), dtype=np.int64)
        for j in range(k):
            row = nbr[j][nbr[j] != j]
            neighbors[j] = row[:m]
    else:
        neighbors = np.zeros((k, 0), dtype=np.int64)

    s = min(skin_node_count, k)
    if k > s:
        dist, idx = _query(tree, mesh.vertices, s + 1)
        d_max = dist[:, s]
        dist, idx = dist[:, :s], idx[:, :s]
    else:
        dist, idx = _query(tree, mesh.vertices, s)
        d_max = dist[:, -1] * (1.0 + 1e-6) + 1e-12
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(d_max[:, None] > 0, dist / d_max[:, None], 0.0)
    weights = np.clip(1.0 - ratio, 0.0, None) ** 2
    total = weights.sum(axis=1)
    # Equidistant ties leave every weight at zero; fall back to the nearest node.
    empty = total <= 0
    weights[empty] = 0.0
    weights[empty, 0] = 1.0
    weights /= weights.sum(axis=1, keepdims=True)

    return DeformationGraph(nodes, neighbors, idx, weights, downsample_factor, node_idx)


def _check_sizes(mesh: TemplateMesh, graph: DeformationGraph, params: GraphParams):
    if params.num_nodes != graph.num_nodes:
        raise ShapeMismatchError(
            f"params sized for {params.num_nodes} nodes, graph has {graph.num_nodes}")
    if mesh.num_vertices != graph.num_vertices:
        raise ShapeMismatchError(
            f"graph skins {graph.num_vertices} vertices, mesh has {mesh.num_vertices}")


def deform(mesh: TemplateMesh, graph: DeformationGraph, params: GraphParams) -> np.ndarray:
    _check_sizes(mesh, graph, params)
    R = rodrigues(params.axis_angles) - np.eye(3)
    idx, w = graph.skin_indices, graph.skin_weights
    local = mesh.vertices[:, None, :] - graph.node_positions[idx]
    moved = np.einsum("nsij,nsj->nsi", R[idx], local) + params.translations[idx]
    return mesh.vertices + np.einsum("ns,nsi->ni", w, moved)


def deform_backward(mesh: TemplateMesh, graph: DeformationGraph, params: GraphParams,
                    grad_vertices: np.ndarray) -> GraphParams:
    """Chain dL/dv' back to dL/dA and dL/dT."""
    _check_sizes(mesh, graph, params)
    grad_vertices = np.asarray(grad_vertices, dtype=np.float64)
    if grad_vertices.shape != mesh.vertices.shape:
        raise ShapeMismatchError("vertex gradient does not match mesh")
    idx, w = graph.skin_indices, graph.skin_weights
    weighted = w[:, :, None] * grad_vertices[:, None, :]

    grad_t = np.zeros((graph.num_nodes, 3))
    np.add.at(grad_t, idx.reshape(-1), weighted.reshape(-1, 3))

    local = mesh.vertices[:, None, :] - graph.node_positions[idx]
    outer = np.einsum("nsa,nsb->nsab", weighted, local)
    H = np.zeros((graph.num_nodes, 3, 3))
    np.add.at(H, idx.reshape(-1), outer.reshape(-1, 3, 3))
    grad_a = np.einsum("kab,kmab->km", H, rodrigues_jacobian(params.axis_angles))
    return GraphParams(grad_a, grad_t)
