"""
Fitting energies: closed-form values and finite-difference gradient checks.
"""

import numpy as np
import pytest

from garmentex.errors import DegenerateFaceError, LandmarkError, ShapeMismatchError
from garmentex.fit import Adam, cosine_decay, e_img, e_lmk, e_norm, e_sil, e_tv
from garmentex.geometry import build_panel


def numeric_gradient(fn, x, h=1e-6):
    grad = np.zeros_like(x)
    flat, out = x.reshape(-1), grad.reshape(-1)
    for i in range(flat.size):
        plus, minus = flat.copy(), flat.copy()
        plus[i] += h
        minus[i] -= h
        out[i] = (fn(plus.reshape(x.shape)) - fn(minus.reshape(x.shape))) / (2 * h)
    return grad


class TestLandmarkEnergy:
    def test_three_four_five(self):
        value, _ = e_lmk([[3.0, 4.0]], [[0.0, 0.0]], 512)
        assert value == pytest.approx(5.0 / 512)

    def test_mean_over_pairs(self):
        value, _ = e_lmk([[3.0, 4.0], [1.0, 1.0]], [[0.0, 0.0], [1.0, 1.0]], 100)
        assert value == pytest.approx(0.025)

    def test_gradient(self):
        rng = np.random.default_rng(0)
        p, q = rng.uniform(0, 64, (5, 2)), rng.uniform(0, 64, (5, 2))
        _, grad = e_lmk(p, q, 64)
        np.testing.assert_allclose(grad, numeric_gradient(lambda x: e_lmk(x, q, 64)[0], p),
                                   atol=1e-8)

    def test_errors(self):
        with pytest.raises(ShapeMismatchError):
            e_lmk([[0.0, 0.0]], [[0.0, 0.0], [1.0, 1.0]], 64)
        with pytest.raises(LandmarkError):
            e_lmk(np.zeros((0, 2)), np.zeros((0, 2)), 64)


class TestSilhouetteEnergy:
    def test_identical_and_disjoint(self):
        a = np.zeros((8, 8))
        a[2:5, 2:5] = 1.0
        assert e_sil(a, a)[0] == 0.0
        assert e_sil(a, np.roll(a, 4, axis=1))[0] == 1.0

    def test_empty_union(self):
        value, grad = e_sil(np.zeros((4, 4)), np.zeros((4, 4)))
        assert value == 0.0 and not grad.any()

    def test_gradient(self):
        rng = np.random.default_rng(1)
        a, b = rng.uniform(size=(6, 6)), (rng.uniform(size=(6, 6)) > 0.5).astype(float)
        _, grad = e_sil(a, b)
        np.testing.assert_allclose(grad, numeric_gradient(lambda x: e_sil(x, b)[0], a), atol=1e-8)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatchError):
            e_sil(np.zeros((4, 4)), np.zeros((4, 5)))


class TestNormalEnergy:
    def test_flat_sheet_is_zero(self):
        from garmentex.geometry import build_quad
        mesh = build_quad().mesh
        assert e_norm(mesh, mesh.vertices)[0] == pytest.approx(0.0, abs=1e-15)

    def test_gradient(self):
        mesh = build_panel(cell_size=0.3).mesh
        v = mesh.vertices + np.random.default_rng(2).normal(0, 0.02, mesh.vertices.shape)
        _, grad = e_norm(mesh, v)
        np.testing.assert_allclose(grad, numeric_gradient(lambda x: e_norm(mesh, x)[0], v),
                                   rtol=1e-5, atol=1e-7)

    def test_degenerate_face(self):
        from garmentex.geometry import build_quad
        mesh = build_quad().mesh
        v = mesh.vertices.copy()
        v[2] = v[0]
        with pytest.raises(DegenerateFaceError):
            e_norm(mesh, v)


class TestTotalVariation:
    def test_constant_image(self):
        value, grad = e_tv(np.full((5, 5, 3), 0.3))
        assert value == pytest.approx(0.0, abs=1e-9)
        assert np.allclose(grad, 0.0)

    def test_unit_step(self):
        img = np.zeros((4, 4, 1))
        img[:, 2:] = 1.0
        value, _ = e_tv(img)
        # one of three horizontal differences per row is 1; vertical ones are 0
        assert value == pytest.approx(1.0 / 3.0, abs=1e-5)

    @pytest.mark.parametrize("masked", [False, True])
    def test_gradient(self, masked):
        rng = np.random.default_rng(3)
        img = rng.uniform(size=(5, 6, 3))
        mask = rng.uniform(size=(5, 6)) > 0.3 if masked else None
        _, grad = e_tv(img, mask)
        np.testing.assert_allclose(grad, numeric_gradient(lambda x: e_tv(x, mask)[0], img),
                                   atol=1e-7)

    def test_two_dimensional_input(self):
        value, grad = e_tv(np.eye(4))
        assert grad.shape == (4, 4)
        assert value > 0

    def test_mask_shape(self):
        with pytest.raises(ShapeMismatchError):
            e_tv(np.zeros((4, 4, 3)), np.ones((3, 3), dtype=bool))


class TestImageEnergy:
    def test_masked_mean(self):
        rendered = np.zeros((2, 2, 3))
        target = np.ones((2, 2, 3))
        mask = np.array([[True, False], [False, False]])
        value, grad = e_img(rendered, target, mask)
        assert value == pytest.approx(3.0)
        assert np.count_nonzero(grad) == 3

    def test_shared_count(self):
        rendered, target = np.zeros((2, 2, 3)), np.ones((2, 2, 3))
        value, _ = e_img(rendered, target, np.ones((2, 2), dtype=bool), count=8)
        assert value == pytest.approx(12.0 / 8)

    def test_gradient(self):
        rng = np.random.default_rng(4)
        r, t = rng.uniform(size=(4, 4, 3)), rng.uniform(size=(4, 4, 3))
        mask = rng.uniform(size=(4, 4)) > 0.5
        _, grad = e_img(r, t, mask)
        np.testing.assert_allclose(grad, numeric_gradient(lambda x: e_img(x, t, mask)[0], r),
                                   atol=1e-8)


class TestOptim:
    def test_first_adam_step_moves_by_lr(self):
        adam = Adam(0.1)
        out = adam.step(np.array([1.0, 1.0]), np.array([3.0, -0.5]))
        np.testing.assert_allclose(out, [0.9, 1.1], atol=1e-6)

    def test_adam_minimizes_quadratic(self):
        adam = Adam(0.05)
        x = np.array([2.0, -3.0])
        for _ in range(500):
            x = adam.step(x, 2.0 * x)
        assert np.all(np.abs(x) < 0.1)

    def test_cosine_decay(self):
        assert cosine_decay(50.0, 5.0, 0, 100) == 50.0
        assert cosine_decay(50.0, 5.0, 100, 100) == pytest.approx(5.0)
        assert cosine_decay(50.0, 5.0, 50, 100) == pytest.approx(27.5)
        values = [cosine_decay(10.0, 1.0, t, 20) for t in range(21)]
        assert all(a >= b for a, b in zip(values, values[1:]))
