import numpy as np
import pytest

from garmentex.errors import ParameterError
from garmentex.geometry import build_quad
from garmentex.render import Camera, render_mask, render_silhouette

TRIANGLE = np.array([[-0.5, -0.4, 0.0], [0.6, -0.3, 0.0], [0.1, 0.5, 0.0]])


class TestSoftSilhouette:
    def test_converges_to_hard_mask(self):
        mesh = build_quad(0.5).mesh
        cam = Camera("front", 1.0, 32)
        soft, _ = render_silhouette(mesh.vertices, mesh.faces, cam, sigma=1e-6)
        hard = render_mask(mesh.vertices, mesh.faces, cam)
        assert np.array_equal(soft.plane > 0.5, hard)

    def test_values_in_unit_interval(self):
        soft, _ = render_silhouette(TRIANGLE, [[0, 1, 2]], Camera("front", 1.0, 32), 1e-3)
        assert soft.plane.min() >= 0.0 and soft.plane.max() <= 1.0
        assert soft.plane[0, 0] == 0.0

    def test_gradient_matches_finite_differences(self):
        cam = Camera("front", 1.0, 32)
        sigma = 1e-3
        weights = np.random.default_rng(4).uniform(-1.0, 1.0, (32, 32))

        def loss(v):
            return float(np.sum(weights * render_silhouette(v, [[0, 1, 2]], cam, sigma)[0].plane))

        _, ctx = render_silhouette(TRIANGLE, [[0, 1, 2]], cam, sigma)
        analytic = ctx.backward(weights)
        numeric = np.zeros_like(TRIANGLE)
        h = 1e-6
        for i in range(3):
            for k in range(3):
                step = np.zeros_like(TRIANGLE)
                step[i, k] = h
                numeric[i, k] = (loss(TRIANGLE + step) - loss(TRIANGLE - step)) / (2 * h)
        np.testing.assert_allclose(analytic, numeric, rtol=1e-3, atol=1e-3)
        assert np.all(analytic[:, 2] == 0.0)

    def test_back_view_gradient_is_mirrored(self):
        front, back = Camera.pair(1.0, 32)
        g = np.ones((32, 32))
        _, ctx_f = render_silhouette(TRIANGLE, [[0, 1, 2]], front, 1e-3)
        mirrored = TRIANGLE * [-1.0, 1.0, 1.0]
        _, ctx_b = render_silhouette(mirrored, [[0, 2, 1]], back, 1e-3)
        np.testing.assert_allclose(ctx_b.backward(g)[[0, 1, 2]][:, 0],
                                   -ctx_f.backward(g)[:, 0], atol=1e-6)

    def test_sigma_must_be_positive(self):
        with pytest.raises(ParameterError):
            render_silhouette(TRIANGLE, [[0, 1, 2]], Camera(), sigma=0.0)
