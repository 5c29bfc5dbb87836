import numpy as np
import pytest

from garmentex.errors import LandmarkError, ParameterError, ShapeMismatchError, SingularSystemError
from garmentex.fit.observation import Observation
from garmentex.geometry import build_quad, rasterize_uv_domain
from garmentex.render import Camera, Image
from garmentex.tps import (
    bending_energy,
    landmark_uvs,
    tps_apply,
    tps_bake_texture,
    tps_kernel,
    tps_solve,
)
from tests.fixtures.garment_fixtures import checker_texture, observations_for

CONTROLS = np.array([[0.0, 0.0], [10.0, 0.0], [10.0, 10.0], [0.0, 10.0], [4.0, 6.0], [7.0, 2.0]])


class TestWarp:
    def test_kernel_is_zero_at_origin(self):
        np.testing.assert_allclose(tps_kernel(np.array([0.0, 1.0])), [0.0, 0.0])
        assert tps_kernel(np.array([np.e]))[0] == pytest.approx(0.5 * np.e)

    def test_interpolates_controls_without_regularization(self):
        rng = np.random.default_rng(4)
        dst = CONTROLS + rng.normal(scale=0.8, size=CONTROLS.shape)
        warp = tps_solve(CONTROLS, dst, regularization=0.0)
        np.testing.assert_allclose(tps_apply(warp, CONTROLS), dst, atol=1e-8)
        assert bending_energy(warp) > 0.0

    def test_affine_maps_are_reproduced(self):
        a = np.array([[1.2, -0.3], [0.4, 0.9]])
        b = np.array([5.0, -2.0])
        warp = tps_solve(CONTROLS, CONTROLS @ a.T + b)
        np.testing.assert_allclose(warp.kernel_weights, 0.0, atol=1e-8)
        points = np.random.default_rng(1).uniform(0, 10, size=(20, 2))
        np.testing.assert_allclose(tps_apply(warp, points), points @ a.T + b, atol=1e-7)
        assert bending_energy(warp) == pytest.approx(0.0, abs=1e-10)

    def test_regularization_relaxes_interpolation(self):
        rng = np.random.default_rng(5)
        dst = CONTROLS + rng.normal(scale=1.0, size=CONTROLS.shape)
        exact = tps_solve(CONTROLS, dst, regularization=0.0)
        smooth = tps_solve(CONTROLS, dst, regularization=10.0)
        assert bending_energy(smooth) < bending_energy(exact)

    @pytest.mark.parametrize("src", [
        np.array([[0.0, 0.0], [1.0, 1.0]]),
        np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
        np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [3.0, 3.0]]),
    ])
    def test_degenerate_controls(self, src):
        with pytest.raises(SingularSystemError):
            tps_solve(src, src)

    def test_argument_checks(self):
        with pytest.raises(ShapeMismatchError):
            tps_solve(CONTROLS, CONTROLS[:4])
        with pytest.raises(ParameterError):
            tps_solve(CONTROLS, CONTROLS, regularization=-1.0)


class TestBake:
    @pytest.fixture
    def quad(self):
        return build_quad()

    @pytest.fixture
    def quad_observations(self, quad):
        return observations_for(quad, checker_texture(32), image_size=32, world_extent=1.0)

    def test_landmark_uvs_follow_chart(self, quad):
        uvs = landmark_uvs(quad.mesh, "front")
        np.testing.assert_allclose(uvs["top_right"], [1.0, 1.0])
        assert landmark_uvs(quad.mesh, "back") == {}

    def test_identity_quad_recovers_texture(self, quad, quad_observations):
        truth = checker_texture(32)
        texture, mask = tps_bake_texture(quad.mesh, quad_observations, 32)
        inner = (slice(1, -1), slice(1, -1))
        assert np.max(np.abs(texture.values[inner] - truth.values[inner])) < 1e-6
        assert not mask.hole[3:-3, 3:-3].any()

    def test_off_silhouette_texels_are_missing(self, quad, quad_observations):
        front = quad_observations["front"]
        silhouette = front.silhouette.plane.copy()
        silhouette[:, :16] = 0.0
        clipped = dict(quad_observations)
        clipped["front"] = Observation(front.image, Image(silhouette), front.landmarks_2d,
                                       front.camera)
        texture, mask = tps_bake_texture(quad.mesh, clipped, 32, dilation_radius=2)
        assert mask.hole[:, 2:14].all()
        assert np.all(texture.values[4:-4, 2:14] == 0.0)
        assert not mask.hole[4:-4, 20:28].any()
        assert np.all(mask.feather[:, 2:14] == 1.0)

    def test_too_few_landmarks(self, quad, quad_observations):
        front = quad_observations["front"]
        sparse = dict(quad_observations)
        sparse["front"] = Observation(
            front.image, front.silhouette,
            {n: front.landmarks_2d[n] for n in ("top_left", "top_right")}, front.camera)
        with pytest.raises(LandmarkError):
            tps_bake_texture(quad.mesh, sparse, 32)

    def test_panel_bakes_both_charts(self, panel_assets, panel_observations):
        texture, mask = tps_bake_texture(panel_assets.mesh, panel_observations, 32)
        domain = rasterize_uv_domain(panel_assets.mesh, 32)
        assert not np.any(texture.values[~domain.inside])
        assert not np.any(mask.hole & ~domain.inside)
        assert mask.fraction_of(domain) < 0.5
