import numpy as np

from garmentex.geometry import build_quad
from garmentex.render import Camera, rasterize, render_mask


def square(z, half=1.0, offset=0):
    vertices = np.array([[-half, -half, z], [half, -half, z], [half, half, z], [-half, half, z]])
    faces = np.array([[0, 1, 2], [0, 2, 3]]) + offset
    return vertices, faces


class TestRasterize:
    def test_full_screen_quad_covers_everything(self):
        mesh = build_quad().mesh
        frags = rasterize(mesh.vertices, mesh.faces, Camera("front", 1.0, 16))
        assert frags.covered.all()
        np.testing.assert_allclose(frags.bary.sum(axis=2), 1.0)

    def test_pixel_center_rule(self):
        # triangle edge at x = 0 passes between columns 7 and 8 of a 16 px image
        vertices = np.array([[-1.0, -1.0, 0.0], [0.0, -1.0, 0.0], [0.0, 3.0, 0.0]])
        mask = render_mask(vertices, [[0, 1, 2]], Camera("front", 1.0, 16))
        assert not mask[:, 8:].any()
        assert mask[15, 0:8].all()

    def test_nearest_surface_wins_per_view(self):
        near, nf = square(0.5)
        far, ff = square(-0.5, half=0.5, offset=4)
        vertices = np.concatenate([near, far])
        faces = np.concatenate([nf, ff])
        front = rasterize(vertices, faces, Camera("front", 1.0, 16))
        back = rasterize(vertices, faces, Camera("back", 1.0, 16))
        assert set(np.unique(front.face_index)) == {0, 1}
        assert set(np.unique(back.face_index[6:10, 6:10])) <= {2, 3}
        assert set(np.unique(back.face_index[0:2, 0:2])) <= {0, 1}

    def test_equal_depth_goes_to_lower_face(self):
        a, fa = square(0.0)
        b, fb = square(0.0, offset=4)
        frags = rasterize(np.concatenate([a, b]), np.concatenate([fa, fb]),
                          Camera("front", 1.0, 16))
        assert frags.face_index.max() <= 1

    def test_offscreen_mesh(self):
        vertices, faces = square(0.0)
        frags = rasterize(vertices + [10.0, 0.0, 0.0], faces, Camera("front", 1.0, 16))
        assert not frags.covered.any()
