"""
Deformation graph: rotations, construction, skinning and ARAP rigidity.
"""

import numpy as np
import pytest

from garmentex.defgraph import (
    GraphParams,
    arap_residuals,
    build_graph,
    deform,
    deform_backward,
    e_arap,
    farthest_point_sample,
    rodrigues,
    rodrigues_jacobian,
)
from garmentex.errors import MeshError, ParameterError, ShapeMismatchError
from garmentex.geometry import TemplateMesh, build_panel


def point_cloud_mesh(count: int, seed: int = 0) -> TemplateMesh:
    points = np.random.default_rng(seed).uniform(-1.0, 1.0, (count, 3))
    return TemplateMesh(points, np.zeros((0, 3)), np.zeros((1, 2)), np.zeros((0, 3)))


def random_params(num_nodes: int, scale: float = 0.3, seed: int = 1) -> GraphParams:
    rng = np.random.default_rng(seed)
    return GraphParams(rng.normal(0.0, scale, (num_nodes, 3)),
                       rng.normal(0.0, scale, (num_nodes, 3)))


def numeric_gradient(fn, x, h=1e-6):
    grad = np.zeros_like(x)
    for i in range(len(x)):
        step = np.zeros_like(x)
        step[i] = h
        grad[i] = (fn(x + step) - fn(x - step)) / (2 * h)
    return grad


class TestRotation:
    def test_quarter_turn_about_z(self):
        R = rodrigues([[0.0, 0.0, np.pi / 2]])[0]
        np.testing.assert_allclose(R @ [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], atol=1e-12)

    def test_rotations_are_orthonormal(self):
        R = rodrigues(np.random.default_rng(0).normal(0, 1.5, (20, 3)))
        np.testing.assert_allclose(R @ np.transpose(R, (0, 2, 1)),
                                   np.broadcast_to(np.eye(3), R.shape), atol=1e-12)
        np.testing.assert_allclose(np.linalg.det(R), 1.0, atol=1e-12)

    def test_zero_is_exact_identity(self):
        assert np.array_equal(rodrigues(np.zeros((1, 3)))[0], np.eye(3))

    @pytest.mark.parametrize("v", [[0.3, -0.7, 1.1], [1e-3, 2e-3, -1e-3], [0.0, 0.0, 0.0]])
    def test_jacobian_matches_finite_differences(self, v):
        v = np.array(v)
        J = rodrigues_jacobian(v[None])[0]
        h = 1e-6
        for m in range(3):
            dv = np.zeros(3)
            dv[m] = h
            fd = (rodrigues((v + dv)[None])[0] - rodrigues((v - dv)[None])[0]) / (2 * h)
            np.testing.assert_allclose(J[m], fd, atol=1e-7)


class TestBuildGraph:
    def test_farthest_point_order(self):
        points = np.stack([np.arange(11.0), np.zeros(11), np.zeros(11)], axis=1)
        assert farthest_point_sample(points, 3).tolist() == [0, 10, 5]

    def test_node_count_is_ceil_of_ratio(self):
        graph = build_graph(point_cloud_mesh(8523), downsample_factor=20)
        assert graph.num_nodes == 427
        assert graph.node_neighbors.shape == (427, 6)

    def test_structure(self, panel_assets):
        mesh = panel_assets.mesh
        graph = build_graph(mesh, 20, 6, 4)
        assert graph.num_nodes == -(-mesh.num_vertices // 20)
        assert graph.num_vertices == mesh.num_vertices
        assert not np.any(graph.node_neighbors == np.arange(graph.num_nodes)[:, None])
        np.testing.assert_allclose(graph.skin_weights.sum(axis=1), 1.0)
        assert np.all(graph.skin_weights >= 0)
        np.testing.assert_array_equal(graph.node_positions,
                                      mesh.vertices[graph.node_vertex_indices])

    def test_node_vertex_is_skinned_to_itself(self, panel_assets):
        graph = build_graph(panel_assets.mesh)
        for node, vertex in enumerate(graph.node_vertex_indices):
            assert graph.skin_indices[vertex, 0] == node

    def test_too_few_vertices(self):
        with pytest.raises(MeshError):
            build_graph(point_cloud_mesh(10), downsample_factor=20)

    def test_bad_factor(self, panel_assets):
        with pytest.raises(ParameterError):
            build_graph(panel_assets.mesh, downsample_factor=1)


class TestDeform:
    def test_identity_returns_template_bitwise(self, panel_assets):
        graph = build_graph(panel_assets.mesh)
        out = deform(panel_assets.mesh, graph, GraphParams.identity(graph.num_nodes))
        assert np.array_equal(out, panel_assets.mesh.vertices)

    def test_uniform_translation(self, panel_assets):
        graph = build_graph(panel_assets.mesh)
        shift = np.array([0.1, -0.2, 0.3])
        params = GraphParams(np.zeros((graph.num_nodes, 3)), np.tile(shift, (graph.num_nodes, 1)))
        np.testing.assert_allclose(deform(panel_assets.mesh, graph, params),
                                   panel_assets.mesh.vertices + shift, atol=1e-12)

    def test_backward_matches_finite_differences(self, panel_assets):
        mesh = panel_assets.mesh
        graph = build_graph(mesh, 40)
        params = random_params(graph.num_nodes)
        weights = np.random.default_rng(5).normal(size=mesh.vertices.shape)

        def loss(x):
            return float(np.sum(weights * deform(mesh, graph, GraphParams.from_vector(x))))

        analytic = deform_backward(mesh, graph, params, weights).to_vector()
        np.testing.assert_allclose(analytic, numeric_gradient(loss, params.to_vector()),
                                   rtol=1e-5, atol=1e-6)

    def test_size_mismatch(self, panel_assets):
        graph = build_graph(panel_assets.mesh)
        with pytest.raises(ShapeMismatchError):
            deform(panel_assets.mesh, graph, GraphParams.identity(graph.num_nodes + 1))

    def test_non_finite_params_rejected(self):
        with pytest.raises(ParameterError):
            GraphParams([[np.nan, 0, 0]], [[0, 0, 0]])

    def test_vector_layout(self):
        params = random_params(4)
        again = GraphParams.from_vector(params.to_vector())
        assert np.array_equal(again.axis_angles, params.axis_angles)
        assert np.array_equal(again.translations, params.translations)


class TestArap:
    def test_zero_at_identity(self, panel_assets):
        graph = build_graph(panel_assets.mesh)
        energy, grad = e_arap(graph, GraphParams.identity(graph.num_nodes))
        assert energy == 0.0
        assert np.all(grad.to_vector() == 0.0)

    def test_zero_for_global_rigid_motion(self, panel_assets):
        graph = build_graph(panel_assets.mesh)
        axis = np.array([0.2, -0.4, 0.9])
        R = rodrigues(axis[None])[0]
        offset = np.array([0.5, 0.0, -0.25])
        translations = graph.node_positions @ (R - np.eye(3)).T + offset
        params = GraphParams(np.tile(axis, (graph.num_nodes, 1)), translations)
        np.testing.assert_allclose(arap_residuals(graph, params), 0.0, atol=1e-12)

    def test_gradient_matches_finite_differences(self, panel_assets):
        graph = build_graph(panel_assets.mesh, 40)
        params = random_params(graph.num_nodes, seed=3)

        def energy(x):
            return e_arap(graph, GraphParams.from_vector(x))[0]

        analytic = e_arap(graph, params)[1].to_vector()
        np.testing.assert_allclose(analytic, numeric_gradient(energy, params.to_vector()),
                                   rtol=1e-5, atol=1e-7)
